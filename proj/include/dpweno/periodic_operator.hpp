#pragma once

#include <memory>
#include <span>
#include <vector>

#include "dpweno/reconstruction.hpp"

namespace dpweno {

/// One row of a circulant operator: (A x)_i = sum_o coeffs[o - first_offset] * x_{i+o}.
struct CirculantStencil {
  int first_offset = 0;
  std::vector<double> coeffs;

  int last_offset() const { return first_offset + static_cast<int>(coeffs.size()) - 1; }
  int half_width() const;
  /// Coefficient at an offset, 0 outside the stencil.
  double at(int offset) const;

  static CirculantStencil identity();
  static CirculantStencil from(const LinearStencil& s);
};

CirculantStencil operator+(const CirculantStencil& a, const CirculantStencil& b);
CirculantStencil operator*(double factor, const CirculantStencil& s);
/// Stencil of the composition outer(inner(x)).
CirculantStencil compose(const CirculantStencil& outer, const CirculantStencil& inner);
/// Row of F_{i+1/2} - F_{i-1/2} for a linear flux F.
CirculantStencil flux_difference_stencil(const LinearStencil& flux);

/// Periodic operator A = circulant(stencil) + c * ones * ones^T with an optional,
/// reusable factorization.
///
/// Pure circulant operators (c == 0) are factorized as a banded Toeplitz LU plus a
/// low-rank correction for the wrap-around corners; the band section must admit LU
/// without pivoting, which holds for the symmetric positive definite DP operator.
/// Operators with c != 0 are circulant but dense, and are inverted exactly through
/// their eigenvalues (the first row of the inverse is stored once).
class PeriodicOperator {
 public:
  PeriodicOperator(int n, CirculantStencil stencil, double constant_coupling = 0.0);

  int size() const { return n_; }
  const CirculantStencil& stencil() const { return stencil_; }
  double constant_coupling() const { return constant_coupling_; }

  std::vector<double> apply(std::span<const double> x) const;
  /// Infinity norm of |A|.
  double abs_row_sum() const;

  /// Builds the factorization; throws NumericalError if the operator is singular.
  void factorize();
  bool factorized() const { return banded_ != nullptr || inverse_ != nullptr; }

  /// Solves A x = rhs with the stored factorization and checks the residual
  /// ||A x - rhs||_inf <= tol * (||rhs||_inf + ||A||_inf ||x||_inf); throws NumericalError otherwise.
  std::vector<double> solve(std::span<const double> rhs) const;

  double residual_tolerance() const { return residual_tolerance_; }
  void set_residual_tolerance(double tol) { residual_tolerance_ = tol; }

  /// First row of the inverse when the dense circulant path is used (empty otherwise).
  std::span<const double> inverse_row() const;

 private:
  struct BandedFactor;
  struct CirculantInverse;

  std::vector<double> solve_unchecked(std::span<const double> rhs) const;

  int n_;
  CirculantStencil stencil_;
  double constant_coupling_;
  double residual_tolerance_ = 1e-10;
  std::shared_ptr<const BandedFactor> banded_;
  std::shared_ptr<const CirculantInverse> inverse_;
};

/// x_i = sum_m row[m] * b_{i+m} (periodic), parallel over i.
std::vector<double> circulant_multiply(std::span<const double> row, std::span<const double> b);

namespace serial {
std::vector<double> circulant_multiply(std::span<const double> row, std::span<const double> b);
}

}  // namespace dpweno
