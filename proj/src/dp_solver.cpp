#include "dpweno/dp_solver.hpp"

#include <stdexcept>

#include "dpweno/flux_splitting.hpp"

namespace dpweno {

EllipticOrder elliptic_order_for(Scheme scheme) {
  return scheme == Scheme::MrWeno7 ? EllipticOrder::Q8 : EllipticOrder::Q6;
}

PeriodicOperator build_dp_elliptic(const UniformGrid& grid, EllipticOrder order) {
  const LinearStencil q = order == EllipticOrder::Q6 ? stencil_q6() : stencil_q8();
  const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
  CirculantStencil s = CirculantStencil::identity() + (-inv_dx2) * flux_difference_stencil(q);
  PeriodicOperator a(grid.size(), std::move(s));
  a.factorize();
  return a;
}

StateField solve_elliptic(const PeriodicOperator& a, const StateField& rhs) {
  if (a.size() != rhs.size()) throw std::invalid_argument("solve_elliptic: operator and field sizes differ");
  return StateField(rhs.grid(), a.solve(rhs.values()));
}

namespace {

struct DpParts {
  StateField flux_diff;
  StateField q;
};

DpParts dp_parts(const StateField& u, const WenoConfig& cfg, const PeriodicOperator& a) {
  StateField diff = flux_difference(assemble_weno_flux(u, cfg));
  StateField rhs(u.grid());
  for (int i = 0; i < u.size(); ++i) rhs[i] = 3.0 * diff[i];
  StateField q = solve_elliptic(a, rhs);
  return {std::move(diff), std::move(q)};
}

}  // namespace

StateField dp_rhs(const StateField& u, const WenoConfig& cfg, const PeriodicOperator& a) {
  const DpParts p = dp_parts(u, cfg, a);
  StateField out(u.grid());
  for (int i = 0; i < u.size(); ++i) out[i] = -p.flux_diff[i] - p.q[i];
  return out;
}

StateField dp_auxiliary(const StateField& u, const WenoConfig& cfg, const PeriodicOperator& a) {
  return dp_parts(u, cfg, a).q;
}

}  // namespace dpweno
