#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "dpweno/exact_solutions.hpp"

using namespace dpweno;

namespace {

// u_t - u_xxt + 4 u u_x = 3 u_x u_xx + u u_xxx for u = U(x - ct), by central differences in long double
long double soliton_residual(double xi, const SolitonParams& p) {
  const long double h = 1e-2L;
  auto U = [&](long double y) { return static_cast<long double>(dp_soliton(static_cast<double>(y), 0.0, p)); };
  const long double f[] = {U(xi - 3 * h), U(xi - 2 * h), U(xi - h), U(xi), U(xi + h), U(xi + 2 * h), U(xi + 3 * h)};
  const long double d1 = (-f[5] + 8 * f[4] - 8 * f[2] + f[1]) / (12 * h);
  const long double d2 = (-f[5] + 16 * f[4] - 30 * f[3] + 16 * f[2] - f[1]) / (12 * h * h);
  const long double d3 = (-f[6] + 8 * f[5] - 13 * f[4] + 13 * f[2] - 8 * f[1] + f[0]) / (8 * h * h * h);
  const long double c = p.speed;
  return -c * d1 + c * d3 + 4 * f[3] * d1 - 3 * d1 * d2 - f[3] * d3;
}

double green_oracle(double x) {
  x -= std::floor(x);
  return x * x / 2 - x / 2 + 13.0 / 12.0;
}

}  // namespace

TEST_CASE("soliton limits and symmetry") {
  const SolitonParams p{};
  CHECK(dp_soliton(0.0, 0.0, p) == doctest::Approx(4.0 - std::sqrt(5.0)));
  CHECK(dp_soliton(1e-6, 0.0, p) == doctest::Approx(4.0 - std::sqrt(5.0)).epsilon(1e-5));
  CHECK(dp_soliton(-1e-6, 0.0, p) == doctest::Approx(4.0 - std::sqrt(5.0)).epsilon(1e-5));
  CHECK(dp_soliton(60.0, 0.0, p) == doctest::Approx(1.0).epsilon(1e-12));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uni(0.01, 30.0);
  for (int k = 0; k < 10; ++k) {
    const double xi = uni(rng);
    CHECK(dp_soliton(xi, 0.0, p) == dp_soliton(-xi, 0.0, p));
    CHECK(dp_soliton(xi + 5.0 * 1.5, 1.5, p) == doctest::Approx(dp_soliton(xi, 0.0, p)).epsilon(1e-13));
  }
  const SolitonParams q{2.0, 5.0};
  CHECK(dp_soliton(0.7, 0.0, q) == doctest::Approx(2.0 * dp_soliton(0.7, 0.0, p)));
}

TEST_CASE("soliton solves the travelling-wave equation") {
  const SolitonParams p{};
  for (double xi : {0.3, 0.8, 1.5, 3.0, 6.0, 12.0, 25.0}) CHECK(std::abs(static_cast<double>(soliton_residual(xi, p))) < 1e-6);
}

TEST_CASE("soliton far field decays smoothly") {
  const SolitonParams p{};
  double prev = dp_soliton(30.0, 0.0, p) - 1.0;
  for (double xi = 31.0; xi <= 45.0; xi += 1.0) {
    const double v = dp_soliton(xi, 0.0, p) - 1.0;
    CHECK(v > 0.0);
    CHECK(v / prev == doctest::Approx(std::exp(-0.5)).epsilon(1e-3));
    prev = v;
  }
}

TEST_CASE("peakons") {
  CHECK(dp_peakon(3.0, 3.0, 1.0) == 1.0);
  CHECK(dp_peakon(4.0, 3.0, 1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(dp_peakon(-3.0, 3.0, 1.0, -1) == -1.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uni(-20.0, 20.0);
  for (int k = 0; k < 10; ++k) {
    const double x = uni(rng), t = std::abs(uni(rng)) / 4;
    CHECK(dp_peakon(x, t, 2.0) == doctest::Approx(2.0 * std::exp(-std::abs(x - 2.0 * t))));
    CHECK(dp_shock_peakon(x, t) == doctest::Approx(-(x > 0 ? 1.0 : -1.0) * std::exp(-std::abs(x)) / (t + 1.0)));
    CHECK(dp_two_peakon_ic(x) == doctest::Approx(2.0 * std::exp(-std::abs(x + 13.792)) + std::exp(-std::abs(x + 4.0))));
  }
}

TEST_CASE("shock peakon conventions") {
  CHECK(dp_shock_peakon(1e-12, 0.0) == doctest::Approx(-1.0));
  CHECK(dp_shock_peakon(-1e-12, 0.0) == doctest::Approx(1.0));
  CHECK(dp_shock_peakon(0.0, 0.0) == 0.0);
  CHECK(dp_shock_peakon(-1e-12, 3.0) == doctest::Approx(0.25));
}

TEST_CASE("initial conditions") {
  CHECK(dp_two_peakon_ic(-4.0) == doctest::Approx(2.0 * std::exp(-9.792) + 1.0));
  CHECK(dp_peakon_antipeakon_ic(0.0) == 0.0);
  CHECK(dp_triple_ic(1e-12) - dp_triple_ic(-1e-12) == doctest::Approx(2.0));
  CHECK(dp_wavebreak_ic(0.5, 1) == doctest::Approx(std::exp(0.125)));
  CHECK(dp_wavebreak_ic(-50.0, 2) == doctest::Approx(1.0));
  CHECK_THROWS(dp_wavebreak_ic(0.0, 3));
  const TwoPeakonParams anti{.sign = -1};
  CHECK(dp_two_peakon_ic(-4.0, anti) == doctest::Approx(-(2.0 * std::exp(-9.792) + 1.0)));
}

TEST_CASE("mu Green's function") {
  CHECK(mu_green(0.0) == doctest::Approx(13.0 / 12.0));
  CHECK(mu_green(0.5) == doctest::Approx(23.0 / 24.0));
  CHECK(mu_green_deriv(0.0) == 0.0);
  CHECK(mu_green_deriv(0.5) == doctest::Approx(0.0));
  CHECK(mu_green_deriv(0.25) == doctest::Approx(-0.25));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int k = 0; k < 10; ++k) {
    const double x = uni(rng);
    CHECK(mu_green(x) == doctest::Approx(green_oracle(x)));
    CHECK(mu_green(x + 1.0) == doctest::Approx(mu_green(x)));
  }
}

TEST_CASE("particle equations") {
  ParticleState one{{0.333}, {0.2}, {}};
  const ParticleRates r = mu_peakon_ode_rhs(one);
  CHECK(r.dpsi[0] == 0.0);
  CHECK(r.dphi[0] == doctest::Approx(0.36075));

  ParticleState pair{{0.4, 0.4}, {0.1, 0.6}, {}};
  const ParticleRates rp = mu_peakon_ode_rhs(pair);
  CHECK(std::abs(rp.dpsi[0]) < 1e-15);
  CHECK(std::abs(rp.dpsi[1]) < 1e-15);

  ParticleState shock{{0.3}, {0.4}, {0.2}};
  const ParticleRates rs = mu_shock_ode_rhs(shock);
  CHECK(rs.dphi[0] == doctest::Approx(0.3 * 13.0 / 12.0));
  CHECK(rs.dpsi[0] == doctest::Approx(0.6));
  CHECK(rs.ds[0] == 0.0);
}

TEST_CASE("particle evolution") {
  const ParticleState one{{0.333}, {0.9}, {}};
  const ParticleState later = evolve_particles(one, 2.0);
  const double expect = 0.9 + 2.0 * 0.36075;
  CHECK(later.phi[0] == doctest::Approx(expect - std::floor(expect)).epsilon(1e-12));
  CHECK(later.psi[0] == doctest::Approx(0.333));

  const ParticleState shock{{0.1}, {0.4}, {0.05}};
  const ParticleState s1 = evolve_particles(shock, 1.0);
  CHECK(s1.psi[0] == doctest::Approx(0.1 * std::exp(2.0)).epsilon(1e-10));
  CHECK(s1.s[0] == doctest::Approx(0.05));

  ParticleState two{{0.1, 0.08}, {0.4, 0.1}, {}};
  const ParticleState a = evolve_particles(two, 1.0, 1e-4);
  const ParticleState b = evolve_particles(two, 1.0, 5e-5);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(a.phi[i] - b.phi[i]) < 1e-10);
    CHECK(std::abs(a.psi[i] - b.psi[i]) < 1e-10);
  }
  CHECK_THROWS(evolve_particles(two, 1.0, 0.0));
}

TEST_CASE("particle fields") {
  const ParticleState one{{0.5}, {0.3}, {}};
  CHECK(mu_peakon_field(0.3, one) == doctest::Approx(0.5 * 13.0 / 12.0));
  CHECK(mu_peakon_field(1.7, one) == doctest::Approx(mu_peakon_field(0.7, one)));
  const ParticleState shock{{0.5}, {0.3}, {0.2}};
  const double jump = mu_shock_field(0.3 + 1e-12, shock) - mu_shock_field(0.3 - 1e-12, shock);
  CHECK(jump == doctest::Approx(-0.2).epsilon(1e-9));
  CHECK(mu_particle_field(0.6, shock) == doctest::Approx(mu_shock_field(0.6, shock)));
  CHECK(mu_particle_field(0.6, one) == doctest::Approx(mu_peakon_field(0.6, one)));
}

TEST_CASE("smooth travelling profile") {
  const MuSmoothParams params{};
  const SmoothProfile coarse = mu_smooth_profile(params, 1 << 14);
  double lo = 1e9, hi = -1e9;
  for (double v : coarse.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo >= 0.5 - 1e-12);
  CHECK(hi <= 1.5 + 1e-12);
  CHECK(hi == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(coarse(params.anchor_x) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(coarse.values.front() == doctest::Approx(coarse.values.back()).epsilon(1e-9));
  double mean = 0.0;
  for (int j = 0; j < coarse.n_cells; ++j) mean += coarse.values[j] * coarse.spacing();
  CHECK(mean == doctest::Approx(params.mu0).epsilon(1e-8));
  CHECK(coarse.sample(3, 1 << 10) == coarse.values[3 * 16]);
  CHECK_THROWS(coarse.sample(0, 3));

  MuSmoothParams bad = params;
  bad.speed = 1.0;
  CHECK_THROWS(mu_smooth_profile(bad, 1 << 10));
  CHECK_THROWS(mu_smooth_profile(params, 1000));
}

TEST_CASE("profile converges in the cell count") {
  const SmoothProfile a = mu_smooth_profile({}, 1 << 20);
  const SmoothProfile b = mu_smooth_profile({}, 1 << 21);
  double worst = 0.0;
  for (int j = 0; j <= a.n_cells; j += 64) worst = std::max(worst, std::abs(a.values[j] - b.values[2 * j]));
  CHECK(worst < 1e-10);
}

TEST_CASE("profile cache round trip") {
  const auto path = std::filesystem::temp_directory_path() / "dpweno_test_profile.bin";
  std::filesystem::remove(path);
  const SmoothProfile p = mu_smooth_profile({}, 1 << 12);
  save_profile(p, path);
  const auto back = load_profile(path, {}, 1 << 12);
  REQUIRE(back.has_value());
  CHECK(back->values == p.values);
  CHECK_FALSE(load_profile(path, {}, 1 << 13).has_value());
  MuSmoothParams other{};
  other.mu0 = 2.5;
  CHECK_FALSE(load_profile(path, other, 1 << 12).has_value());
  const SmoothProfile cached = cached_smooth_profile(path, {}, 1 << 12);
  CHECK(cached.values == p.values);
  std::filesystem::remove(path);
}
