#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "dpweno/grid.hpp"

namespace dpweno {

// ---------------------------------------------------------------------------
// DP closed forms and initial conditions

struct SolitonParams {
  double amplitude = 1.0;  // A, the far-field level
  double speed = 5.0;      // c
};

/// Smooth DP soliton U(x - ct); U(0) = A(4 - sqrt5), U -> A as |x - ct| -> infinity.
double dp_soliton(double x, double t, const SolitonParams& p);

/// sign * c * exp(-|x - sign*c*t|): peakon for sign = +1, anti-peakon for sign = -1.
double dp_peakon(double x, double t, double c, int sign = 1);

/// -(1/(t+1)) sign(x) exp(-|x|), sign(0) = 0.
double dp_shock_peakon(double x, double t);

struct TwoPeakonParams {
  double c1 = 2.0, x1 = -13.792;
  double c2 = 1.0, x2 = -4.0;
  int sign = 1;  // -1 for the two anti-peakon variant
};

double dp_two_peakon_ic(double x, const TwoPeakonParams& p = {});
/// exp(-|x+5|) - exp(-|x-5|).
double dp_peakon_antipeakon_ic(double x);
/// exp(-|x+5|) + sign(x) exp(-|x|) - exp(-|x-5|).
double dp_triple_ic(double x);
/// Variant 1: exp(0.5 x^2) sin(pi x); variant 2: sech^2(0.1 (x + 50)).
double dp_wavebreak_ic(double x, int variant);

// ---------------------------------------------------------------------------
// mu-DP particle solutions on the unit circle

/// Periodic Green's function x(x-1)/2 + 13/12, argument reduced into [0, 1).
double mu_green(double x);
/// x - 1/2 on (0, 1), 0 at x = 0, argument reduced into [0, 1).
double mu_green_deriv(double x);

struct ParticleState {
  std::vector<double> psi;
  std::vector<double> phi;  // positions, kept in [0, 1)
  std::vector<double> s;    // shock strengths; empty for peakons

  int size() const { return static_cast<int>(psi.size()); }
  bool has_shocks() const { return !s.empty(); }
};

struct ParticleRates {
  std::vector<double> dpsi, dphi, ds;
};

ParticleRates mu_peakon_ode_rhs(const ParticleState& state);
ParticleRates mu_shock_ode_rhs(const ParticleState& state);

/// RK4 from t = 0 to t_end with step dt (last step shortened); positions wrapped into [0, 1).
ParticleState evolve_particles(const ParticleState& initial, double t_end, double dt = 1e-4);

/// sum_i psi_i g(x - phi_i).
double mu_peakon_field(double x, const ParticleState& state);
/// sum_i psi_i g(x - phi_i) + s_i g'(x - phi_i).
double mu_shock_field(double x, const ParticleState& state);
/// Peakon or shock field according to state.has_shocks().
double mu_particle_field(double x, const ParticleState& state);

// ---------------------------------------------------------------------------
// Smooth periodic wave: (phi')^2 = 2 mu0 (M - phi)(phi - m)/(c - phi)

struct MuSmoothParams {
  double crest = 1.5;   // M
  double trough = 0.5;  // m
  double speed = 2.0;   // c
  double mu0 = 2.55499933801271;
  double period = 2.73321849515629;
  double anchor_x = 0.796433828683979;
  double anchor_value = 1.0;
};

/// Profile sampled at x_j = -period/2 + j*period/n_cells, j = 0..n_cells.
struct SmoothProfile {
  MuSmoothParams params;
  int n_cells = 0;
  std::vector<double> values;

  double spacing() const { return params.period / n_cells; }
  double x(int j) const { return -0.5 * params.period + j * spacing(); }
  /// Value at -period/2 + i*period/n for an n dividing n_cells; periodic in i.
  double sample(int i, int n) const;
  /// Cubic interpolation at an arbitrary point, periodic.
  double operator()(double x) const;
};

/// Integrates phi'' = F'(phi)/2 with RK4 out of the anchor (phi' = +sqrt(F(phi)) there).
/// n_cells must be a power of two; NumericalError if phi leaves [m, M].
SmoothProfile mu_smooth_profile(const MuSmoothParams& params = {}, int n_cells = 1 << 21);

void save_profile(const SmoothProfile& profile, const std::filesystem::path& path);
/// nullopt when the file is missing or was written for other parameters.
std::optional<SmoothProfile> load_profile(const std::filesystem::path& path, const MuSmoothParams& params, int n_cells);
/// Loads from the cache when possible, otherwise integrates and writes the cache.
SmoothProfile cached_smooth_profile(const std::filesystem::path& path, const MuSmoothParams& params = {},
                                    int n_cells = 1 << 21);

}  // namespace dpweno
