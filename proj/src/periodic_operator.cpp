#include "dpweno/periodic_operator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dpweno {

// ---------------------------------------------------------------------------
// CirculantStencil

int CirculantStencil::half_width() const { return std::max(std::abs(first_offset), std::abs(last_offset())); }

double CirculantStencil::at(int offset) const {
  const int j = offset - first_offset;
  if (j < 0 || j >= static_cast<int>(coeffs.size())) return 0.0;
  return coeffs[static_cast<std::size_t>(j)];
}

CirculantStencil CirculantStencil::identity() { return {0, {1.0}}; }

CirculantStencil CirculantStencil::from(const LinearStencil& s) {
  return {s.first_offset, std::vector<double>(s.coeffs.begin(), s.coeffs.end())};
}

CirculantStencil operator+(const CirculantStencil& a, const CirculantStencil& b) {
  const int lo = std::min(a.first_offset, b.first_offset);
  const int hi = std::max(a.last_offset(), b.last_offset());
  CirculantStencil out{lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1), 0.0)};
  for (int o = lo; o <= hi; ++o) out.coeffs[static_cast<std::size_t>(o - lo)] = a.at(o) + b.at(o);
  return out;
}

CirculantStencil operator*(double factor, const CirculantStencil& s) {
  CirculantStencil out = s;
  for (double& c : out.coeffs) c *= factor;
  return out;
}

CirculantStencil compose(const CirculantStencil& outer, const CirculantStencil& inner) {
  // (outer(inner x))_i = sum_a outer_a sum_b inner_b x_{i+a+b}
  const int lo = outer.first_offset + inner.first_offset;
  const int hi = outer.last_offset() + inner.last_offset();
  CirculantStencil out{lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1), 0.0)};
  for (int a = outer.first_offset; a <= outer.last_offset(); ++a) {
    for (int b = inner.first_offset; b <= inner.last_offset(); ++b) {
      out.coeffs[static_cast<std::size_t>(a + b - lo)] += outer.at(a) * inner.at(b);
    }
  }
  return out;
}

CirculantStencil flux_difference_stencil(const LinearStencil& flux) {
  const CirculantStencil f = CirculantStencil::from(flux);
  const CirculantStencil shifted{f.first_offset - 1, f.coeffs};  // F_{i-1/2}
  return f + (-1.0) * shifted;
}

// ---------------------------------------------------------------------------
// Factorizations

namespace {

// Small dense LU with partial pivoting (capacitance systems).
struct DenseLu {
  int m = 0;
  std::vector<double> lu;
  std::vector<int> perm;

  explicit DenseLu(int size, std::vector<double> a) : m(size), lu(std::move(a)), perm(static_cast<std::size_t>(size)) {
    for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
    double scale = 0.0;
    for (double v : lu) scale = std::max(scale, std::abs(v));
    for (int c = 0; c < m; ++c) {
      int piv = c;
      for (int r = c + 1; r < m; ++r) {
        if (std::abs(at(r, c)) > std::abs(at(piv, c))) piv = r;
      }
      if (!(std::abs(at(piv, c)) > 1e-12 * scale)) throw NumericalError("periodic operator: singular corner correction");
      if (piv != c) {
        for (int j = 0; j < m; ++j) std::swap(at(piv, j), at(c, j));
        std::swap(perm[static_cast<std::size_t>(piv)], perm[static_cast<std::size_t>(c)]);
      }
      for (int r = c + 1; r < m; ++r) {
        at(r, c) /= at(c, c);
        for (int j = c + 1; j < m; ++j) at(r, j) -= at(r, c) * at(c, j);
      }
    }
  }

  double& at(int r, int c) { return lu[static_cast<std::size_t>(r * m + c)]; }
  double at(int r, int c) const { return lu[static_cast<std::size_t>(r * m + c)]; }

  std::vector<double> solve(const std::vector<double>& b) const {
    std::vector<double> x(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < i; ++j) x[static_cast<std::size_t>(i)] -= at(i, j) * x[static_cast<std::size_t>(j)];
    }
    for (int i = m - 1; i >= 0; --i) {
      for (int j = i + 1; j < m; ++j) x[static_cast<std::size_t>(i)] -= at(i, j) * x[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(i)] /= at(i, i);
    }
    return x;
  }
};

}  // namespace

struct PeriodicOperator::BandedFactor {
  int n = 0;
  int w = 0;
  std::vector<double> band;  // LU of the Toeplitz section, n x (2w+1), column j stored at j - i + w
  std::vector<int> corner_rows;
  // sparse rows of the wrap-around part, one list per corner row
  std::vector<std::vector<std::pair<int, double>>> corner_entries;
  std::vector<double> z;  // T^{-1} P, n x 2w row-major
  std::unique_ptr<DenseLu> capacitance;

  double& b(int i, int j) { return band[static_cast<std::size_t>(i * (2 * w + 1) + (j - i + w))]; }
  double b(int i, int j) const { return band[static_cast<std::size_t>(i * (2 * w + 1) + (j - i + w))]; }

  void band_solve(std::vector<double>& x) const {
    for (int i = 0; i < n; ++i) {
      double acc = x[static_cast<std::size_t>(i)];
      for (int j = std::max(0, i - w); j < i; ++j) acc -= b(i, j) * x[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(i)] = acc;
    }
    for (int i = n - 1; i >= 0; --i) {
      double acc = x[static_cast<std::size_t>(i)];
      for (int j = i + 1; j <= std::min(n - 1, i + w); ++j) acc -= b(i, j) * x[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(i)] = acc / b(i, i);
    }
  }

  BandedFactor(int size, const CirculantStencil& s) : n(size), w(s.half_width()) {
    if (n <= 2 * w) throw std::invalid_argument("periodic operator: grid too small for the stencil width");
    band.assign(static_cast<std::size_t>(n * (2 * w + 1)), 0.0);
    double scale = 0.0;
    for (double c : s.coeffs) scale = std::max(scale, std::abs(c));
    for (int i = 0; i < n; ++i) {
      for (int o = -w; o <= w; ++o) {
        const int j = i + o;
        if (j >= 0 && j < n) b(i, j) = s.at(o);
      }
    }
    for (int k = 0; k < n; ++k) {
      const double pivot = b(k, k);
      if (!(std::abs(pivot) > 1e-13 * scale)) {
        throw NumericalError("periodic operator: band section needs pivoting or is singular");
      }
      for (int i = k + 1; i <= std::min(n - 1, k + w); ++i) {
        const double l = b(i, k) / pivot;
        b(i, k) = l;
        for (int j = k + 1; j <= std::min(n - 1, k + w); ++j) b(i, j) -= l * b(k, j);
      }
    }

    for (int i = 0; i < w; ++i) corner_rows.push_back(i);
    for (int i = n - w; i < n; ++i) corner_rows.push_back(i);
    const int m = static_cast<int>(corner_rows.size());
    corner_entries.resize(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) {
      const int i = corner_rows[static_cast<std::size_t>(t)];
      for (int o = -w; o <= w; ++o) {
        const int j = i + o;
        if (j < 0 || j >= n) {
          const double c = s.at(o);
          if (c != 0.0) corner_entries[static_cast<std::size_t>(t)].emplace_back(j < 0 ? j + n : j - n, c);
        }
      }
    }

    z.assign(static_cast<std::size_t>(n * m), 0.0);
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int t = 0; t < m; ++t) {
      std::fill(col.begin(), col.end(), 0.0);
      col[static_cast<std::size_t>(corner_rows[static_cast<std::size_t>(t)])] = 1.0;
      band_solve(col);
      for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i * m + t)] = col[static_cast<std::size_t>(i)];
    }
    std::vector<double> cap(static_cast<std::size_t>(m * m), 0.0);
    for (int r = 0; r < m; ++r) {
      cap[static_cast<std::size_t>(r * m + r)] = 1.0;
      for (const auto& [j, c] : corner_entries[static_cast<std::size_t>(r)]) {
        for (int t = 0; t < m; ++t) cap[static_cast<std::size_t>(r * m + t)] += c * z[static_cast<std::size_t>(j * m + t)];
      }
    }
    capacitance = std::make_unique<DenseLu>(m, std::move(cap));
  }

  std::vector<double> solve(std::span<const double> rhs) const {
    std::vector<double> y(rhs.begin(), rhs.end());
    band_solve(y);
    const int m = static_cast<int>(corner_rows.size());
    std::vector<double> q(static_cast<std::size_t>(m), 0.0);
    for (int r = 0; r < m; ++r) {
      for (const auto& [j, c] : corner_entries[static_cast<std::size_t>(r)]) q[static_cast<std::size_t>(r)] += c * y[static_cast<std::size_t>(j)];
    }
    const std::vector<double> t = capacitance->solve(q);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int s = 0; s < m; ++s) acc += z[static_cast<std::size_t>(i * m + s)] * t[static_cast<std::size_t>(s)];
      y[static_cast<std::size_t>(i)] -= acc;
    }
    return y;
  }
};

struct PeriodicOperator::CirculantInverse {
  std::vector<double> row;

  CirculantInverse(int n, const CirculantStencil& s, double coupling) : row(static_cast<std::size_t>(n), 0.0) {
    // eigenvalue for the Fourier mode k: lambda_k = sum_o s_o w^{k o} + c n [k == 0], w = exp(2 pi i / n)
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
      roots[static_cast<std::size_t>(j)] = {std::cos(angle), std::sin(angle)};
    }
    auto root = [&](long long e) {
      long long r = e % n;
      if (r < 0) r += n;
      return roots[static_cast<std::size_t>(r)];
    };
    std::vector<std::complex<double>> inv_lambda(static_cast<std::size_t>(n));
    double largest = 0.0;
    for (int k = 0; k < n; ++k) {
      std::complex<double> lambda = 0.0;
      for (int o = s.first_offset; o <= s.last_offset(); ++o) lambda += s.at(o) * root(static_cast<long long>(k) * o);
      if (k == 0) lambda += coupling * static_cast<double>(n);
      largest = std::max(largest, std::abs(lambda));
      inv_lambda[static_cast<std::size_t>(k)] = lambda;
    }
    for (int k = 0; k < n; ++k) {
      auto& l = inv_lambda[static_cast<std::size_t>(k)];
      if (!(std::abs(l) > 1e-13 * largest)) {
        std::ostringstream msg;
        msg << "periodic operator: singular (Fourier mode " << k << " has eigenvalue " << std::abs(l) << ")";
        throw NumericalError(msg.str());
      }
      l = 1.0 / l;
    }
    // row_m = (1/n) sum_k w^{-k m} / lambda_k
    for (int m = 0; m < n; ++m) {
      std::complex<double> acc = 0.0;
      for (int k = 0; k < n; ++k) acc += inv_lambda[static_cast<std::size_t>(k)] * root(-static_cast<long long>(k) * m);
      row[static_cast<std::size_t>(m)] = acc.real() / static_cast<double>(n);
    }
  }
};

// ---------------------------------------------------------------------------
// PeriodicOperator

PeriodicOperator::PeriodicOperator(int n, CirculantStencil stencil, double constant_coupling)
    : n_(n), stencil_(std::move(stencil)), constant_coupling_(constant_coupling) {
  if (n_ <= 2 * stencil_.half_width()) {
    throw std::invalid_argument("periodic operator: n = " + std::to_string(n_) + " too small for stencil half-width " +
                                std::to_string(stencil_.half_width()));
  }
}

std::vector<double> PeriodicOperator::apply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("periodic operator: size mismatch");
  std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
  double total = 0.0;
  if (constant_coupling_ != 0.0) {
    for (double v : x) total += v;
    total *= constant_coupling_;
  }
  const int lo = stencil_.first_offset;
  const int hi = stencil_.last_offset();
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (int o = lo; o <= hi; ++o) {
      int j = i + o;
      if (j < 0) j += n_;
      else if (j >= n_) j -= n_;
      acc += stencil_.coeffs[static_cast<std::size_t>(o - lo)] * x[static_cast<std::size_t>(j)];
    }
    y[static_cast<std::size_t>(i)] = acc + total;
  }
  return y;
}

double PeriodicOperator::abs_row_sum() const {
  double s = 0.0;
  for (double c : stencil_.coeffs) s += std::abs(c);
  return s + std::abs(constant_coupling_) * static_cast<double>(n_);
}

void PeriodicOperator::factorize() {
  if (factorized()) return;
  if (constant_coupling_ == 0.0) {
    banded_ = std::make_shared<const BandedFactor>(n_, stencil_);
  } else {
    inverse_ = std::make_shared<const CirculantInverse>(n_, stencil_, constant_coupling_);
  }
}

std::span<const double> PeriodicOperator::inverse_row() const {
  if (!inverse_) return {};
  return inverse_->row;
}

std::vector<double> PeriodicOperator::solve_unchecked(std::span<const double> rhs) const {
  if (banded_) return banded_->solve(rhs);
  if (inverse_) return circulant_multiply(inverse_->row, rhs);
  throw std::logic_error("periodic operator: solve before factorize");
}

std::vector<double> PeriodicOperator::solve(std::span<const double> rhs) const {
  if (static_cast<int>(rhs.size()) != n_) throw std::invalid_argument("periodic operator: size mismatch");
  std::vector<double> x = solve_unchecked(rhs);
  const std::vector<double> ax = apply(x);
  double res = 0.0;
  double rhs_norm = 0.0;
  double x_norm = 0.0;
  for (int i = 0; i < n_; ++i) {
    const auto k = static_cast<std::size_t>(i);
    res = std::max(res, std::abs(ax[k] - rhs[k]));
    rhs_norm = std::max(rhs_norm, std::abs(rhs[k]));
    x_norm = std::max(x_norm, std::abs(x[k]));
  }
  const double bound = residual_tolerance_ * (rhs_norm + abs_row_sum() * x_norm);
  if (!(res <= bound)) {
    std::ostringstream msg;
    msg << "periodic operator: residual " << res << " exceeds bound " << bound;
    throw NumericalError(msg.str());
  }
  return x;
}

// ---------------------------------------------------------------------------
// Circulant products

namespace {

inline double circulant_row(const double* row, const double* b, int n, int i) {
  double acc = 0.0;
  const int split = n - i;
  for (int m = 0; m < split; ++m) acc += row[m] * b[i + m];
  for (int m = split; m < n; ++m) acc += row[m] * b[i + m - n];
  return acc;
}

}  // namespace

std::vector<double> circulant_multiply(std::span<const double> row, std::span<const double> b) {
  const int n = static_cast<int>(b.size());
  if (row.size() != b.size()) throw std::invalid_argument("circulant_multiply: size mismatch");
  std::vector<double> x(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = circulant_row(row.data(), b.data(), n, i);
  return x;
}

namespace serial {

std::vector<double> circulant_multiply(std::span<const double> row, std::span<const double> b) {
  const int n = static_cast<int>(b.size());
  if (row.size() != b.size()) throw std::invalid_argument("circulant_multiply: size mismatch");
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = circulant_row(row.data(), b.data(), n, i);
  return x;
}

}  // namespace serial

}  // namespace dpweno
