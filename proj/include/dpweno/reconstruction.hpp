#pragma once

// Polynomial reconstruction on a uniform grid.
//
// Every polynomial lives in the scaled coordinate s = (x - x_i)/dx centred on the
// target point x_i, so cell j = i + o is the interval [o - 1/2, o + 1/2] and the
// half points x_{i -+ 1/2} sit at s = -+1/2. Point values f(u_j) are treated as
// cell averages of an underlying function, which is what makes the flux
// difference of a finite difference scheme approximate a derivative.

#include <array>
#include <span>
#include <vector>

#include "dpweno/grid.hpp"

namespace dpweno {

inline constexpr int kMaxPolyCoeffs = 7;  // degree 6, the MR-WENO7 top stencil

struct LocalPolynomial {
  int degree = 0;
  std::array<double, kMaxPolyCoeffs> coeffs{};  // coeffs[m] multiplies s^m

  double operator()(double s) const;
  /// Exact integral over [a, b] in the scaled coordinate.
  double integral(double a, double b) const;
  LocalPolynomial derivative() const;

  LocalPolynomial& operator+=(const LocalPolynomial& other);
  LocalPolynomial& operator*=(double factor);
};

LocalPolynomial operator+(LocalPolynomial a, const LocalPolynomial& b);
LocalPolynomial operator*(double factor, LocalPolynomial p);

enum class Side { RightHalf, LeftHalf };

constexpr double half_point(Side side) { return side == Side::RightHalf ? 0.5 : -0.5; }

// ---------------------------------------------------------------------------
// Fixed-coefficient linear fluxes for the auxiliary variables.

/// A linear flux reconstruction F_{i+1/2} = sum_o coeffs[o - first_offset] * w_{i+o}.
struct LinearStencil {
  int first_offset;
  std::span<const double> coeffs;

  int last_offset() const { return first_offset + static_cast<int>(coeffs.size()) - 1; }
};

/// Sixth-order q-hat for the DP elliptic part; window q_{i-2..i+3}.
double linear_flux_q6(std::span<const double, 6> w);
/// Eighth-order q-hat; window q_{i-3..i+4}.
double linear_flux_q8(std::span<const double, 8> w);
/// Fifth-order upwind pair for the mu-DP system: v^- on v_{i-2..i+2}, q^+ on q_{i-1..i+3}.
double linear_flux_v5_minus(std::span<const double, 5> w);
double linear_flux_q5_plus(std::span<const double, 5> w);
/// Seventh-order pair: v^- on v_{i-3..i+3}, q^+ on q_{i-2..i+4}.
double linear_flux_v7_minus(std::span<const double, 7> w);
double linear_flux_q7_plus(std::span<const double, 7> w);

LinearStencil stencil_q6();
LinearStencil stencil_q8();
LinearStencil stencil_v5_minus();
LinearStencil stencil_q5_plus();
LinearStencil stencil_v7_minus();
LinearStencil stencil_q7_plus();

// ---------------------------------------------------------------------------
// Cell-average fits and smoothness.

/// The unique polynomial of degree m-1 whose averages over the cells at offsets
/// first_offset .. first_offset+m-1 equal `values`.
LocalPolynomial fit_poly_cell_averages(std::span<const double> values, int first_offset);

/// Sum over l >= 1 of dx^(2l-1) * integral over the target cell of (d^l p/dx^l)^2.
/// In the scaled coordinate the dx powers cancel, leaving sum_l int_{-1/2}^{1/2} (p^(l)(s))^2 ds.
double smoothness_indicator(const LocalPolynomial& p);

// ---------------------------------------------------------------------------
// WENO reconstructions.

/// Result of one WENO reconstruction around a target point: the blended polynomial
/// plus the per-candidate data that produced it (exposed for tests and diagnostics).
struct WenoReconstruction {
  LocalPolynomial poly;
  int candidates = 0;
  std::array<double, 4> weights{};     // omega_r
  std::array<double, 4> indicators{};  // beta_r
};

/// Simple WENO5: big stencil {-2..2}, small stencils {-1,0} and {0,1}.
WenoReconstruction simple_weno_reconstruct(std::span<const double, 5> w, const WenoConfig& cfg);
double simple_weno_point(std::span<const double, 5> w, Side side, const WenoConfig& cfg);

/// Multi-resolution WENO(2k+1) on the nested central stencils of half-width 0..k; w has 2k+1 values.
WenoReconstruction mr_weno_reconstruct(std::span<const double> w, int k, const WenoConfig& cfg);
double mr_weno_point(std::span<const double> w, Side side, int k, const WenoConfig& cfg);

struct MrBeta1 {
  double beta;
  LocalPolynomial surrogate;  // the linear function standing in for the constant p_1
};

/// Smoothness of the one-point stencil, measured from the two neighbouring slopes.
MrBeta1 mr_beta1(double f_left, double f_center, double f_right, int k, double epsilon);

namespace detail {

/// Weight-injection hook: with force_linear the nonlinear weights are replaced by the
/// linear weights. Only the identity tests use this.
WenoReconstruction simple_weno_reconstruct(std::span<const double, 5> w, const WenoConfig& cfg,
                                           bool force_linear);
WenoReconstruction mr_weno_reconstruct(std::span<const double> w, int k, const WenoConfig& cfg,
                                       bool force_linear);

/// values -> coefficients map of the cell-average fit at the given offsets (row-major m x m).
std::vector<double> cell_average_fit_matrix(int first_offset, int count);

}  // namespace detail

}  // namespace dpweno
