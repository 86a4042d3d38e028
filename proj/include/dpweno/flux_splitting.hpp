#pragma once

#include "dpweno/grid.hpp"
#include "dpweno/reconstruction.hpp"

namespace dpweno {

/// f(u) = u^2/2
inline double burgers_flux(double u) { return 0.5 * u * u; }

/// Lax-Friedrichs split of f(u) = u^2/2 into an upwind (plus) and downwind (minus) part.
struct SplitFlux {
  double alpha;
  StateField plus;   // (f(u) + alpha u)/2
  StateField minus;  // (f(u) - alpha u)/2
};

/// max_j |u_j|, i.e. max |f'(u)| over the field.
double global_alpha(const StateField& u);

/// Throws std::invalid_argument when alpha < max|u| (the split would not be monotone).
SplitFlux split(const StateField& u, double alpha);

/// Half-point fluxes F[i] = f^_{i+1/2} = f^+_{i+1/2} + f^-_{i+1/2}, with alpha taken
/// from the field itself. f^+_{i+1/2} comes from the window centred at i evaluated at
/// s = +1/2, f^-_{i+1/2} from the window centred at i+1 evaluated at s = -1/2.
/// Grid points are reconstructed in parallel.
StateField assemble_weno_flux(const StateField& u, const WenoConfig& cfg);

/// (F[i] - F[i-1]) / dx under periodic wrap.
StateField flux_difference(const StateField& flux);

namespace serial {

/// Single-threaded reference for assemble_weno_flux; results are bit-identical.
StateField assemble_weno_flux(const StateField& u, const WenoConfig& cfg);

}  // namespace serial

}  // namespace dpweno
