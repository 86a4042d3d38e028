#pragma once

#include "dpweno/grid.hpp"
#include "dpweno/periodic_operator.hpp"

namespace dpweno {

/// dx * sum_j u_j.
double discrete_mean(const StateField& u);

enum class MuOrder { VQ5, VQ7 };

MuOrder mu_order_for(Scheme scheme);

struct MuDpOperators {
  PeriodicOperator a;  // q = (v^-_{i+1/2} - v^-_{i-1/2})/dx
  PeriodicOperator c;  // (q^+_{i+1/2} - q^+_{i-1/2})/dx
  PeriodicOperator d;  // dx 1 1^T - C A, factorized
};

MuDpOperators build_mudp_operators(const UniformGrid& grid, MuOrder order);

/// du_i/dt = -(F_{i+1/2} - F_{i-1/2})/dx - 3 mu_h(u) q_i with q = A D^{-1} u.
StateField mudp_rhs(const StateField& u, const WenoConfig& cfg, const MuDpOperators& ops);

/// q = A D^{-1} u.
StateField mudp_auxiliary(const StateField& u, const MuDpOperators& ops);

}  // namespace dpweno
