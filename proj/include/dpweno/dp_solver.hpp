#pragma once

#include "dpweno/grid.hpp"
#include "dpweno/periodic_operator.hpp"

namespace dpweno {

enum class EllipticOrder { Q6, Q8 };

/// Q6 for the fifth-order schemes, Q8 for MR-WENO7.
EllipticOrder elliptic_order_for(Scheme scheme);

/// A = I - D2/dx^2 where D2 is the flux difference of the linear q-hat stencil; factorized.
PeriodicOperator build_dp_elliptic(const UniformGrid& grid, EllipticOrder order);

/// q with A q = rhs; NumericalError on a failed residual check.
StateField solve_elliptic(const PeriodicOperator& a, const StateField& rhs);

/// du_i/dt = -(F_{i+1/2} - F_{i-1/2})/dx - q_i, A q = 3 (F_{i+1/2} - F_{i-1/2})/dx.
StateField dp_rhs(const StateField& u, const WenoConfig& cfg, const PeriodicOperator& a);

/// The auxiliary q of the current state.
StateField dp_auxiliary(const StateField& u, const WenoConfig& cfg, const PeriodicOperator& a);

}  // namespace dpweno
