#include "dpweno/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpweno {

ErrorNorms error_norms(const StateField& num, const StateField& ref) {
  if (!(num.grid() == ref.grid())) throw std::invalid_argument("error_norms: fields live on different grids");
  ErrorNorms e;
  double sum = 0.0;
  for (int i = 0; i < num.size(); ++i) {
    const double d = std::abs(num[i] - ref[i]);
    sum += d;
    e.linf = std::max(e.linf, d);
  }
  e.l1 = num.grid().dx() * sum;
  return e;
}

std::vector<ErrorReport> convergence_orders(std::vector<ErrorReport> reports) {
  for (std::size_t r = 1; r < reports.size(); ++r) {
    const ErrorReport& prev = reports[r - 1];
    ErrorReport& cur = reports[r];
    if (cur.n != 2 * prev.n) throw std::invalid_argument("convergence_orders: grid sizes must double");
    cur.order_l1 = std::log2(prev.l1 / cur.l1);
    cur.order_linf = std::log2(prev.linf / cur.linf);
  }
  return reports;
}

StateField restrict_to(const StateField& fine, const UniformGrid& coarse) {
  const UniformGrid& g = fine.grid();
  if (g.size() != 2 * coarse.size() || g.x_min() != coarse.x_min() || g.x_max() != coarse.x_max() ||
      g.layout() != GridLayout::Nodes || coarse.layout() != GridLayout::Nodes) {
    throw std::invalid_argument("restrict_to: need node grids on the same domain, the fine one with twice the points");
  }
  StateField out(coarse);
  for (int i = 0; i < coarse.size(); ++i) out[i] = fine[2 * i];
  return out;
}

ErrorNorms self_convergence(const StateField& num_n, const StateField& num_2n) {
  return error_norms(num_n, restrict_to(num_2n, num_n.grid()));
}

double overshoot(const StateField& u, double lo, double hi) {
  const auto [mn, mx] = std::minmax_element(u.values().begin(), u.values().end());
  return std::max({0.0, *mx - hi, lo - *mn});
}

double max_gradient(const StateField& u) {
  double g = 0.0;
  for (int i = 0; i < u.size(); ++i) g = std::max(g, std::abs(u.at(i + 1) - u[i]));
  return g / u.grid().dx();
}

JumpOvershoot jump_overshoot(const StateField& u, int transition, int reference) {
  const int n = u.size();
  if (transition < 0 || reference < 2 || n < 2 * (transition + reference) + 2) {
    throw std::invalid_argument("jump_overshoot: window does not fit the grid");
  }
  JumpOvershoot r;
  double steepest = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(u.at(i + 1) - u[i]);
    if (d > steepest) {
      steepest = d;
      r.index = i;
    }
  }
  // local abscissa t = offset from the jump midpoint, in cells
  auto fit = [&](int first) {
    double st = 0.0, sv = 0.0, stt = 0.0, stv = 0.0;
    for (int k = 0; k < reference; ++k) {
      const double t = first + k - 0.5;
      const double v = u.at(r.index + first + k);
      st += t;
      sv += v;
      stt += t * t;
      stv += t * v;
    }
    const double m = reference;
    const double slope = (m * stv - st * sv) / (m * stt - st * st);
    return std::pair{(sv - slope * st) / m, slope};
  };
  const auto [l0, l1] = fit(-transition - reference + 1);
  const auto [r0, r1] = fit(transition + 1);
  r.jump = std::abs(r0 - l0);
  for (int o = 1 - transition; o <= transition; ++o) {
    const double t = o - 0.5;
    const double a = l0 + l1 * t, b = r0 + r1 * t;
    const double v = u.at(r.index + o);
    r.overshoot = std::max({r.overshoot, v - std::max(a, b), std::min(a, b) - v});
  }
  return r;
}

}  // namespace dpweno
