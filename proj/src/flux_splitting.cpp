#include "dpweno/flux_splitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace dpweno {

double global_alpha(const StateField& u) {
  double alpha = 0.0;
  const auto v = u.values();
  const int n = u.size();
#pragma omp parallel for reduction(max : alpha) schedule(static)
  for (int i = 0; i < n; ++i) alpha = std::max(alpha, std::abs(v[static_cast<std::size_t>(i)]));
  return alpha;
}

SplitFlux split(const StateField& u, double alpha) {
  const double needed = global_alpha(u);
  if (!(alpha >= needed)) {
    std::ostringstream msg;
    msg << "split: alpha = " << alpha << " is below max|u| = " << needed;
    throw std::invalid_argument(msg.str());
  }
  SplitFlux out{alpha, StateField(u.grid()), StateField(u.grid())};
  for (int i = 0; i < u.size(); ++i) {
    const double f = burgers_flux(u[i]);
    out.plus[i] = 0.5 * (f + alpha * u[i]);
    out.minus[i] = 0.5 * (f - alpha * u[i]);
  }
  return out;
}

StateField flux_difference(const StateField& flux) {
  StateField d(flux.grid());
  const double inv_dx = 1.0 / flux.grid().dx();
  const int n = flux.size();
  for (int i = 0; i < n; ++i) d[i] = (flux[i] - flux.at(i - 1)) * inv_dx;
  return d;
}

namespace {

// Reconstructed value of the window centred at i, evaluated at the requested half point.
double reconstruct_at(std::span<const double> values, int n, int i, Side side, const WenoConfig& cfg) {
  const int k = cfg.order_parameter();
  std::array<double, 7> buffer{};
  const int width = 2 * k + 1;
  const double* window = nullptr;
  if (i - k >= 0 && i + k < n) {
    window = values.data() + (i - k);
  } else {
    for (int o = 0; o < width; ++o) {
      int j = (i - k + o) % n;
      if (j < 0) j += n;
      buffer[static_cast<std::size_t>(o)] = values[static_cast<std::size_t>(j)];
    }
    window = buffer.data();
  }
  if (cfg.scheme == Scheme::Weno5Simple) {
    return simple_weno_point(std::span<const double, 5>(window, 5), side, cfg);
  }
  return mr_weno_point(std::span<const double>(window, static_cast<std::size_t>(width)), side, k, cfg);
}

struct HalfPointValues {
  std::vector<double> plus_right;  // f^+_{i+1/2} from window i
  std::vector<double> minus_left;  // f^-_{i-1/2} from window i
};

StateField combine(const StateField& u, const HalfPointValues& hp) {
  StateField flux(u.grid());
  const int n = u.size();
  for (int i = 0; i < n; ++i) {
    const int next = i + 1 == n ? 0 : i + 1;
    flux[i] = hp.plus_right[static_cast<std::size_t>(i)] + hp.minus_left[static_cast<std::size_t>(next)];
  }
  return flux;
}

SplitFlux split_for(const StateField& u) { return split(u, global_alpha(u)); }

}  // namespace

StateField assemble_weno_flux(const StateField& u, const WenoConfig& cfg) {
  const SplitFlux s = split_for(u);
  const int n = u.size();
  HalfPointValues hp{std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  const auto plus = s.plus.values();
  const auto minus = s.minus.values();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    hp.plus_right[static_cast<std::size_t>(i)] = reconstruct_at(plus, n, i, Side::RightHalf, cfg);
    hp.minus_left[static_cast<std::size_t>(i)] = reconstruct_at(minus, n, i, Side::LeftHalf, cfg);
  }
  return combine(u, hp);
}

namespace serial {

StateField assemble_weno_flux(const StateField& u, const WenoConfig& cfg) {
  const SplitFlux s = split_for(u);
  const int n = u.size();
  HalfPointValues hp{std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) {
    hp.plus_right[static_cast<std::size_t>(i)] = reconstruct_at(s.plus.values(), n, i, Side::RightHalf, cfg);
    hp.minus_left[static_cast<std::size_t>(i)] = reconstruct_at(s.minus.values(), n, i, Side::LeftHalf, cfg);
  }
  return combine(u, hp);
}

}  // namespace serial

}  // namespace dpweno
