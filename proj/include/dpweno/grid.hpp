#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpweno {

/// Thrown when a run produces non-finite values or a linear solve misses its residual bound.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Where the n samples sit inside the n cells of [x_min, x_max).
enum class GridLayout {
  Nodes,        // x_i = x_min + i*dx
  CellCenters,  // x_i = x_min + (i + 1/2)*dx
};

/// Uniform periodic grid with n points, i = 0..n-1; x_max is identified with x_min.
class UniformGrid {
 public:
  /// Narrowest grid that still fits the widest reconstruction window (7 points) plus a neighbour.
  static constexpr int kMinPoints = 9;

  UniformGrid(double x_min, double x_max, int n, GridLayout layout = GridLayout::Nodes);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double length() const { return x_max_ - x_min_; }
  int size() const { return n_; }
  double dx() const { return dx_; }
  GridLayout layout() const { return layout_; }

  double point(int i) const {
    return x_min_ + (static_cast<double>(i) + (layout_ == GridLayout::CellCenters ? 0.5 : 0.0)) * dx_;
  }
  std::vector<double> points() const;

  /// Periodic index map onto [0, n).
  int wrap(int i) const {
    int r = i % n_;
    return r < 0 ? r + n_ : r;
  }

  bool operator==(const UniformGrid&) const = default;

 private:
  double x_min_;
  double x_max_;
  int n_;
  double dx_;
  GridLayout layout_;
};

UniformGrid make_grid(double x_min, double x_max, int n, GridLayout layout = GridLayout::Nodes);

/// Point values on a periodic grid (u, q, v or flux arrays).
class StateField {
 public:
  explicit StateField(UniformGrid grid);
  StateField(UniformGrid grid, std::vector<double> values);

  const UniformGrid& grid() const { return grid_; }
  int size() const { return grid_.size(); }

  double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

  /// Periodic access: at(i) == at(i + n).
  double at(int i) const { return values_[static_cast<std::size_t>(grid_.wrap(i))]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& data() const { return values_; }

  bool all_finite() const;

 private:
  UniformGrid grid_;
  std::vector<double> values_;
};

/// values_i = f(x_i); throws NumericalError naming the first non-finite sample.
StateField sample_field(const UniformGrid& grid, const std::function<double(double)>& f);

enum class Scheme { Weno5Simple, MrWeno5, MrWeno7 };

enum class DtMode { Linear, AccuracyScaled };

/// Linear weights gamma_{r,l} of the multi-resolution hierarchy, rows r = 2..4, entries l = 1..r.
/// Row 1 is the trivial gamma_{1,1} = 1.
struct MrLinearWeights {
  std::array<std::array<double, 5>, 5> gamma{};

  double operator()(int r, int l) const { return gamma[r][l]; }
  double& operator()(int r, int l) { return gamma[r][l]; }

  /// 1/11, 10/11; 1/111, 10/111, 100/111; 1/1111, ..., 1000/1111.
  static MrLinearWeights standard();
};

struct WenoConfig {
  Scheme scheme = Scheme::Weno5Simple;
  double epsilon = 1e-10;
  std::array<double, 3> simple_linear_weights{0.98, 0.01, 0.01};
  MrLinearWeights mr_linear_weights = MrLinearWeights::standard();
  double cfl = 0.3;
  DtMode dt_mode = DtMode::Linear;

  /// k in the (2k+1)-th order count: 2 for the fifth-order schemes, 3 for MR-WENO7.
  int order_parameter() const { return scheme == Scheme::MrWeno7 ? 3 : 2; }
  int order() const { return 2 * order_parameter() + 1; }

  /// Throws std::invalid_argument when a weight table is inadmissible.
  void validate() const;
};

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

}  // namespace dpweno
