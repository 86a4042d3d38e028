#include "dpweno/grid.hpp"

#include <cmath>
#include <sstream>

namespace dpweno {

UniformGrid::UniformGrid(double x_min, double x_max, int n, GridLayout layout)
    : x_min_(x_min), x_max_(x_max), n_(n), dx_(0.0), layout_(layout) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw std::invalid_argument("grid: degenerate interval, need x_max > x_min");
  }
  if (n < kMinPoints) {
    std::ostringstream msg;
    msg << "grid: n = " << n << " is below the widest stencil (need n >= " << kMinPoints << ")";
    throw std::invalid_argument(msg.str());
  }
  dx_ = (x_max - x_min) / static_cast<double>(n);
}

std::vector<double> UniformGrid::points() const {
  std::vector<double> x(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] = point(i);
  return x;
}

UniformGrid make_grid(double x_min, double x_max, int n, GridLayout layout) {
  return UniformGrid(x_min, x_max, n, layout);
}

StateField::StateField(UniformGrid grid)
    : grid_(grid), values_(static_cast<std::size_t>(grid.size()), 0.0) {}

StateField::StateField(UniformGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid_.size())) {
    throw std::invalid_argument("field: value count does not match grid size");
  }
}

bool StateField::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

StateField sample_field(const UniformGrid& grid, const std::function<double(double)>& f) {
  StateField field(grid);
  for (int i = 0; i < grid.size(); ++i) {
    const double v = f(grid.point(i));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "sample_field: non-finite value at index " << i << " (x = " << grid.point(i) << ")";
      throw NumericalError(msg.str());
    }
    field[i] = v;
  }
  return field;
}

MrLinearWeights MrLinearWeights::standard() {
  MrLinearWeights w;
  w(1, 1) = 1.0;
  w(2, 1) = 1.0 / 11.0;
  w(2, 2) = 10.0 / 11.0;
  w(3, 1) = 1.0 / 111.0;
  w(3, 2) = 10.0 / 111.0;
  w(3, 3) = 100.0 / 111.0;
  w(4, 1) = 1.0 / 1111.0;
  w(4, 2) = 10.0 / 1111.0;
  w(4, 3) = 100.0 / 1111.0;
  w(4, 4) = 1000.0 / 1111.0;
  return w;
}

void WenoConfig::validate() const {
  constexpr double kSumTol = 1e-14;
  if (!(epsilon > 0.0)) throw std::invalid_argument("weno: epsilon must be positive");
  if (!(cfl > 0.0)) throw std::invalid_argument("weno: cfl must be positive");
  double sum = 0.0;
  for (double g : simple_linear_weights) {
    if (!(g > 0.0)) throw std::invalid_argument("weno: simple linear weights must be positive");
    sum += g;
  }
  if (std::abs(sum - 1.0) > kSumTol) throw std::invalid_argument("weno: simple linear weights must sum to 1");

  const int rows = order_parameter() + 1;
  for (int r = 2; r <= rows; ++r) {
    double row_sum = 0.0;
    for (int l = 1; l <= r; ++l) {
      if (mr_linear_weights(r, l) < 0.0) {
        throw std::invalid_argument("weno: multi-resolution weight gamma_" + std::to_string(r) + "," +
                                    std::to_string(l) + " is negative");
      }
      row_sum += mr_linear_weights(r, l);
    }
    if (mr_linear_weights(r, r) == 0.0) {
      throw std::invalid_argument("weno: multi-resolution weight gamma_" + std::to_string(r) + "," +
                                  std::to_string(r) + " must be nonzero");
    }
    if (std::abs(row_sum - 1.0) > kSumTol) {
      throw std::invalid_argument("weno: multi-resolution row " + std::to_string(r) + " must sum to 1");
    }
  }
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Weno5Simple: return "weno5";
    case Scheme::MrWeno5: return "mrweno5";
    case Scheme::MrWeno7: return "mrweno7";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "weno5") return Scheme::Weno5Simple;
  if (name == "mrweno5") return Scheme::MrWeno5;
  if (name == "mrweno7") return Scheme::MrWeno7;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected weno5, mrweno5 or mrweno7)");
}

}  // namespace dpweno
