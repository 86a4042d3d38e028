#include "dpweno/reconstruction.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpweno {

// ---------------------------------------------------------------------------
// LocalPolynomial

double LocalPolynomial::operator()(double s) const {
  double acc = 0.0;
  for (int m = degree; m >= 0; --m) acc = acc * s + coeffs[m];
  return acc;
}

double LocalPolynomial::integral(double a, double b) const {
  double acc = 0.0;
  double pa = a;
  double pb = b;
  for (int m = 0; m <= degree; ++m) {
    acc += coeffs[m] * (pb - pa) / static_cast<double>(m + 1);
    pa *= a;
    pb *= b;
  }
  return acc;
}

LocalPolynomial LocalPolynomial::derivative() const {
  LocalPolynomial d;
  d.degree = degree > 0 ? degree - 1 : 0;
  for (int m = 1; m <= degree; ++m) d.coeffs[m - 1] = static_cast<double>(m) * coeffs[m];
  return d;
}

LocalPolynomial& LocalPolynomial::operator+=(const LocalPolynomial& other) {
  for (int m = 0; m <= other.degree; ++m) coeffs[m] += other.coeffs[m];
  if (other.degree > degree) degree = other.degree;
  return *this;
}

LocalPolynomial& LocalPolynomial::operator*=(double factor) {
  for (int m = 0; m <= degree; ++m) coeffs[m] *= factor;
  return *this;
}

LocalPolynomial operator+(LocalPolynomial a, const LocalPolynomial& b) { return a += b; }
LocalPolynomial operator*(double factor, LocalPolynomial p) { return p *= factor; }

// ---------------------------------------------------------------------------
// Linear fluxes

namespace {

constexpr std::array<double, 6> kQ6 = {-2.0 / 180, 25.0 / 180, -245.0 / 180, 245.0 / 180, -25.0 / 180, 2.0 / 180};
constexpr std::array<double, 8> kQ8 = {9.0 / 5040,    -119.0 / 5040, 889.0 / 5040, -7175.0 / 5040,
                                       7175.0 / 5040, -889.0 / 5040, 119.0 / 5040, -9.0 / 5040};
constexpr std::array<double, 5> kV5Minus = {2.0 / 60, -13.0 / 60, 47.0 / 60, 27.0 / 60, -3.0 / 60};
constexpr std::array<double, 5> kQ5Plus = {-3.0 / 60, 27.0 / 60, 47.0 / 60, -13.0 / 60, 2.0 / 60};
constexpr std::array<double, 7> kV7Minus = {-3.0 / 420,  25.0 / 420,  -101.0 / 420, 319.0 / 420,
                                            214.0 / 420, -38.0 / 420, 4.0 / 420};
constexpr std::array<double, 7> kQ7Plus = {4.0 / 420,    -38.0 / 420, 214.0 / 420, 319.0 / 420,
                                           -101.0 / 420, 25.0 / 420,  -3.0 / 420};

template <std::size_t N>
double dot(const std::array<double, N>& c, std::span<const double, N> w) {
  double acc = 0.0;
  for (std::size_t j = 0; j < N; ++j) acc += c[j] * w[j];
  return acc;
}

}  // namespace

double linear_flux_q6(std::span<const double, 6> w) { return dot(kQ6, w); }
double linear_flux_q8(std::span<const double, 8> w) { return dot(kQ8, w); }
double linear_flux_v5_minus(std::span<const double, 5> w) { return dot(kV5Minus, w); }
double linear_flux_q5_plus(std::span<const double, 5> w) { return dot(kQ5Plus, w); }
double linear_flux_v7_minus(std::span<const double, 7> w) { return dot(kV7Minus, w); }
double linear_flux_q7_plus(std::span<const double, 7> w) { return dot(kQ7Plus, w); }

LinearStencil stencil_q6() { return {-2, kQ6}; }
LinearStencil stencil_q8() { return {-3, kQ8}; }
LinearStencil stencil_v5_minus() { return {-2, kV5Minus}; }
LinearStencil stencil_q5_plus() { return {-1, kQ5Plus}; }
LinearStencil stencil_v7_minus() { return {-3, kV7Minus}; }
LinearStencil stencil_q7_plus() { return {-2, kQ7Plus}; }

// ---------------------------------------------------------------------------
// Cell-average fits

namespace detail {

std::vector<double> cell_average_fit_matrix(int first_offset, int count) {
  if (count < 1 || count > kMaxPolyCoeffs) {
    throw std::invalid_argument("cell-average fit: need 1.." + std::to_string(kMaxPolyCoeffs) + " cells");
  }
  const auto m = static_cast<std::size_t>(count);
  // moments[j][p] = average of s^p over cell first_offset + j; solve moments * c = values.
  std::vector<long double> a(m * 2 * m, 0.0L);
  auto at = [&](std::size_t r, std::size_t c) -> long double& { return a[r * 2 * m + c]; };
  for (std::size_t j = 0; j < m; ++j) {
    const long double lo = static_cast<long double>(first_offset + static_cast<int>(j)) - 0.5L;
    const long double hi = lo + 1.0L;
    long double plo = lo;
    long double phi = hi;
    for (std::size_t p = 0; p < m; ++p) {
      at(j, p) = (phi - plo) / static_cast<long double>(p + 1);
      plo *= lo;
      phi *= hi;
    }
    at(j, m + j) = 1.0L;
  }
  // Gauss-Jordan with partial pivoting on [moments | I].
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::fabs(at(r, col)) > std::fabs(at(piv, col))) piv = r;
    }
    if (at(piv, col) == 0.0L) throw std::logic_error("cell-average fit: singular moment system");
    if (piv != col) {
      for (std::size_t c = 0; c < 2 * m; ++c) std::swap(at(piv, c), at(col, c));
    }
    const long double inv = 1.0L / at(col, col);
    for (std::size_t c = 0; c < 2 * m; ++c) at(col, c) *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const long double f = at(r, col);
      if (f == 0.0L) continue;
      for (std::size_t c = 0; c < 2 * m; ++c) at(r, c) -= f * at(col, c);
    }
  }
  std::vector<double> inv(m * m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) inv[r * m + c] = static_cast<double>(at(r, m + c));
  }
  return inv;
}

}  // namespace detail

namespace {

struct FitTable {
  int first_offset = 0;
  int count = 0;
  std::array<double, kMaxPolyCoeffs * kMaxPolyCoeffs> matrix{};

  FitTable() = default;
  FitTable(int first, int m) : first_offset(first), count(m) {
    const auto inv = detail::cell_average_fit_matrix(first, m);
    for (std::size_t k = 0; k < inv.size(); ++k) matrix[k] = inv[k];
  }

  // values are indexed by cell offset first_offset..first_offset+count-1
  LocalPolynomial apply(const double* values) const {
    LocalPolynomial p;
    p.degree = count - 1;
    for (int r = 0; r < count; ++r) {
      double acc = 0.0;
      for (int c = 0; c < count; ++c) acc += matrix[static_cast<std::size_t>(r * count + c)] * values[c];
      p.coeffs[static_cast<std::size_t>(r)] = acc;
    }
    return p;
  }
};

struct Tables {
  // simple WENO5
  FitTable big{-2, 5};
  FitTable left{-1, 2};
  FitTable right{0, 2};
  // central stencils of half-width 0..3
  std::array<FitTable, 4> central{FitTable{0, 1}, FitTable{-1, 3}, FitTable{-2, 5}, FitTable{-3, 7}};
  // smoothness quadratic form on monomial coefficients
  std::array<std::array<double, kMaxPolyCoeffs>, kMaxPolyCoeffs> gram{};

  Tables() {
    auto falling = [](int a, int l) {
      double f = 1.0;
      for (int j = 0; j < l; ++j) f *= static_cast<double>(a - j);
      return f;
    };
    auto cell_moment = [](int k) {  // int_{-1/2}^{1/2} s^k ds
      if (k % 2 != 0) return 0.0;
      return 2.0 * std::pow(0.5, k + 1) / static_cast<double>(k + 1);
    };
    for (int a = 0; a < kMaxPolyCoeffs; ++a) {
      for (int b = 0; b < kMaxPolyCoeffs; ++b) {
        double acc = 0.0;
        for (int l = 1; l <= std::min(a, b); ++l) acc += falling(a, l) * falling(b, l) * cell_moment(a + b - 2 * l);
        gram[a][b] = acc;
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

double indicator(const LocalPolynomial& p) {
  const auto& q = tables().gram;
  double acc = 0.0;
  for (int a = 1; a <= p.degree; ++a) {
    double row = 0.0;
    for (int b = 1; b <= p.degree; ++b) row += q[a][b] * p.coeffs[b];
    acc += p.coeffs[a] * row;
  }
  return acc;
}

}  // namespace

LocalPolynomial fit_poly_cell_averages(std::span<const double> values, int first_offset) {
  const FitTable table(first_offset, static_cast<int>(values.size()));
  return table.apply(values.data());
}

double smoothness_indicator(const LocalPolynomial& p) { return indicator(p); }

// ---------------------------------------------------------------------------
// Simple WENO

namespace detail {

WenoReconstruction simple_weno_reconstruct(std::span<const double, 5> w, const WenoConfig& cfg, bool force_linear) {
  const Tables& t = tables();
  const auto& g = cfg.simple_linear_weights;

  const LocalPolynomial p1 = t.big.apply(w.data());
  const LocalPolynomial p2 = t.left.apply(w.data() + 1);
  const LocalPolynomial p3 = t.right.apply(w.data() + 2);

  // p1 = g1*p1_tilde + g2*p2 + g3*p3
  LocalPolynomial p1_tilde = p1;
  for (int m = 0; m <= 1; ++m) p1_tilde.coeffs[m] -= g[1] * p2.coeffs[m] + g[2] * p3.coeffs[m];
  p1_tilde *= 1.0 / g[0];

  WenoReconstruction out;
  out.candidates = 3;
  out.indicators = {indicator(p1_tilde), p2.coeffs[1] * p2.coeffs[1], p3.coeffs[1] * p3.coeffs[1], 0.0};

  if (force_linear) {
    out.weights = {g[0], g[1], g[2], 0.0};
  } else {
    const double b1 = out.indicators[0];
    const double spread = 0.5 * (std::abs(b1 - out.indicators[1]) + std::abs(b1 - out.indicators[2]));
    const double tau = spread * spread;
    double total = 0.0;
    for (int r = 0; r < 3; ++r) {
      out.weights[r] = g[r] * (1.0 + tau / (out.indicators[r] + cfg.epsilon));
      total += out.weights[r];
    }
    for (int r = 0; r < 3; ++r) out.weights[r] /= total;
  }

  out.poly = out.weights[0] * p1_tilde;
  for (int m = 0; m <= 1; ++m) out.poly.coeffs[m] += out.weights[1] * p2.coeffs[m] + out.weights[2] * p3.coeffs[m];
  return out;
}

}  // namespace detail

WenoReconstruction simple_weno_reconstruct(std::span<const double, 5> w, const WenoConfig& cfg) {
  return detail::simple_weno_reconstruct(w, cfg, false);
}

double simple_weno_point(std::span<const double, 5> w, Side side, const WenoConfig& cfg) {
  return detail::simple_weno_reconstruct(w, cfg, false).poly(half_point(side));
}

// ---------------------------------------------------------------------------
// Multi-resolution WENO

MrBeta1 mr_beta1(double f_left, double f_center, double f_right, int k, double epsilon) {
  const double d0 = f_center - f_left;
  const double d1 = f_right - f_center;
  const double pi0 = d0 * d0;
  const double pi1 = d1 * d1;
  const double g0 = pi0 >= pi1 ? 1.0 / 11.0 : 10.0 / 11.0;
  const double g1 = 1.0 - g0;
  const double gap = std::pow(std::abs(pi0 - pi1), k);
  const double theta0 = g0 * (1.0 + gap / (pi0 + epsilon));
  const double theta1 = g1 * (1.0 + gap / (pi1 + epsilon));
  const double theta = theta0 + theta1;
  const double slope = theta0 / theta * d0 + theta1 / theta * d1;

  MrBeta1 out{slope * slope, {}};
  out.surrogate.degree = 1;
  out.surrogate.coeffs[1] = slope;
  return out;
}

namespace detail {

WenoReconstruction mr_weno_reconstruct(std::span<const double> w, int k, const WenoConfig& cfg, bool force_linear) {
  if (k != 2 && k != 3) {
    throw std::invalid_argument("mr-weno: unsupported order parameter k = " + std::to_string(k) + " (expected 2 or 3)");
  }
  if (w.size() != static_cast<std::size_t>(2 * k + 1)) {
    throw std::invalid_argument("mr-weno: window must hold 2k+1 values");
  }
  const Tables& t = tables();
  const auto& gamma = cfg.mr_linear_weights;
  const double* center = w.data() + k;
  const int levels = k + 1;

  std::array<LocalPolynomial, 5> p{};        // p_r, 1-based
  std::array<LocalPolynomial, 5> p_mod{};    // P_r with the linear surrogate at level 1
  const MrBeta1 b1 = mr_beta1(center[-1], center[0], center[1], k, cfg.epsilon);

  WenoReconstruction out;
  out.candidates = levels;
  out.indicators[0] = b1.beta;

  for (int r = 1; r <= levels; ++r) {
    const LocalPolynomial tilde = t.central[static_cast<std::size_t>(r - 1)].apply(center - (r - 1));
    if (r == 1) {
      p[1] = tilde;
      p_mod[1] = b1.surrogate;
      continue;
    }
    const double grr = gamma(r, r);
    LocalPolynomial pr = (1.0 / grr) * tilde;
    LocalPolynomial pr_mod = pr;
    for (int l = 1; l < r; ++l) {
      const double c = -gamma(r, l) / grr;
      pr += c * p[l];
      pr_mod += c * p_mod[l];
    }
    p[r] = pr;
    p_mod[r] = pr_mod;
    out.indicators[r - 1] = indicator(pr_mod);
  }

  if (force_linear) {
    for (int r = 1; r <= levels; ++r) out.weights[r - 1] = gamma(levels, r);
  } else {
    const double top = out.indicators[levels - 1];
    double spread = 0.0;
    for (int l = 0; l < k; ++l) spread += std::abs(top - out.indicators[l]);
    const double tau = std::pow(spread / k, k);
    double total = 0.0;
    for (int r = 1; r <= levels; ++r) {
      out.weights[r - 1] = gamma(levels, r) * (1.0 + tau / (out.indicators[r - 1] + cfg.epsilon));
      total += out.weights[r - 1];
    }
    for (int r = 0; r < levels; ++r) out.weights[r] /= total;
  }

  out.poly = LocalPolynomial{};
  for (int r = 1; r <= levels; ++r) out.poly += out.weights[r - 1] * p[r];
  return out;
}

}  // namespace detail

WenoReconstruction mr_weno_reconstruct(std::span<const double> w, int k, const WenoConfig& cfg) {
  return detail::mr_weno_reconstruct(w, k, cfg, false);
}

double mr_weno_point(std::span<const double> w, Side side, int k, const WenoConfig& cfg) {
  return detail::mr_weno_reconstruct(w, k, cfg, false).poly(half_point(side));
}

}  // namespace dpweno
