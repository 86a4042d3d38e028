#pragma once

#include <optional>
#include <vector>

#include "dpweno/grid.hpp"

namespace dpweno {

struct ErrorNorms {
  double l1 = 0.0;    // dx * sum |d_i|
  double linf = 0.0;  // max |d_i|
};

/// Throws std::invalid_argument when the grids differ.
ErrorNorms error_norms(const StateField& num, const StateField& ref);

struct ErrorReport {
  int n = 0;
  double l1 = 0.0;
  double linf = 0.0;
  std::optional<double> order_l1;
  std::optional<double> order_linf;
};

/// Fills order = log2(E_prev / E) for every row after the first; rows must double in n.
std::vector<ErrorReport> convergence_orders(std::vector<ErrorReport> reports);

/// Every other point of a field on 2n points, as a field on `coarse`.
StateField restrict_to(const StateField& fine, const UniformGrid& coarse);

/// error_norms(num_n, restrict_to(num_2n, grid of num_n)).
ErrorNorms self_convergence(const StateField& num_n, const StateField& num_2n);

/// max(0, max(u) - hi, lo - min(u)).
double overshoot(const StateField& u, double lo, double hi);

/// max_i |u_{i+1} - u_i| / dx.
double max_gradient(const StateField& u);

struct JumpOvershoot {
  int index = 0;          // jump sits between index and index+1
  double jump = 0.0;      // |left extrapolant - right extrapolant| at the jump
  double overshoot = 0.0;  // largest excursion outside the band spanned by the extrapolants
  double relative() const { return jump > 0.0 ? overshoot / jump : 0.0; }
};

/// Locates the steepest jump, fits lines to `reference` points on each side (beyond
/// `transition` points of the jump) and measures how far the transition window leaves
/// the band between the two lines.
JumpOvershoot jump_overshoot(const StateField& u, int transition = 4, int reference = 4);

}  // namespace dpweno
