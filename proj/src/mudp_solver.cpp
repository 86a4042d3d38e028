#include "dpweno/mudp_solver.hpp"


#include "dpweno/flux_splitting.hpp"

namespace dpweno {

double discrete_mean(const StateField& u) {
  const UniformGrid& g = u.grid();
  double sum = 0.0;
  for (double v : u.values()) sum += v;
  return g.dx() * sum;
}

MuOrder mu_order_for(Scheme scheme) { return scheme == Scheme::MrWeno7 ? MuOrder::VQ7 : MuOrder::VQ5; }

MuDpOperators build_mudp_operators(const UniformGrid& grid, MuOrder order) {
  const bool seventh = order == MuOrder::VQ7;
  const double inv_dx = 1.0 / grid.dx();
  CirculantStencil a = inv_dx * flux_difference_stencil(seventh ? stencil_v7_minus() : stencil_v5_minus());
  CirculantStencil c = inv_dx * flux_difference_stencil(seventh ? stencil_q7_plus() : stencil_q5_plus());
  CirculantStencil d = (-1.0) * compose(c, a);
  MuDpOperators ops{PeriodicOperator(grid.size(), a), PeriodicOperator(grid.size(), c),
                    PeriodicOperator(grid.size(), d, grid.dx())};
  ops.d.factorize();
  return ops;
}

StateField mudp_auxiliary(const StateField& u, const MuDpOperators& ops) {
  const std::vector<double> v = ops.d.solve(u.values());
  return StateField(u.grid(), ops.a.apply(v));
}

StateField mudp_rhs(const StateField& u, const WenoConfig& cfg, const MuDpOperators& ops) {
  const StateField diff = flux_difference(assemble_weno_flux(u, cfg));
  const StateField q = mudp_auxiliary(u, ops);
  const double mu = discrete_mean(u);
  StateField out(u.grid());
  for (int i = 0; i < u.size(); ++i) out[i] = -diff[i] - 3.0 * mu * q[i];
  return out;
}

}  // namespace dpweno
