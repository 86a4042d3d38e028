#include <doctest.h>

#include <cmath>

#include "dpweno/dp_solver.hpp"
#include "dpweno/time_integration.hpp"

using namespace dpweno;

namespace {
const UniformGrid kGrid = make_grid(0, 1, 10);

StateField scalar(double v) { return StateField(kGrid, std::vector<double>(10, v)); }

Rhs linear(double lambda) {
  return [lambda](const StateField& u) {
    StateField r(u.grid());
    for (int i = 0; i < u.size(); ++i) r[i] = lambda * u[i];
    return r;
  };
}
}  // namespace

TEST_CASE("zero right-hand side is the identity") {
  const StateField u = scalar(0.37);
  CHECK(ssp_rk3_step(u, 0.1, linear(0.0))[3] == 0.37);
  const std::vector<double> y{1.0, -2.0};
  const auto z = rk4_step(y, 0.2, [](const std::vector<double>& v) { return std::vector<double>(v.size(), 0.0); });
  CHECK(z == y);
}

TEST_CASE("amplification factors") {
  const double lambda = -1.7, dt = 0.3, z = lambda * dt;
  CHECK(ssp_rk3_step(scalar(1.0), dt, linear(lambda))[0] == doctest::Approx(1 + z + z * z / 2 + z * z * z / 6));
  const auto y = rk4_step({1.0}, dt, [](const std::vector<double>& v) { return v; });
  CHECK(y[0] == doctest::Approx(1 + dt + dt * dt / 2 + dt * dt * dt / 6 + dt * dt * dt * dt / 24));
}

TEST_CASE("SSP-RK3 is third order on exponential decay") {
  auto error = [](double dt) {
    TimePolicy p;
    p.t_end = 1.0;
    p.cfl = dt / kGrid.dx();
    return std::abs(integrate(scalar(1.0), linear(-1.0), p).u[0] - std::exp(-1.0));
  };
  CHECK(std::log2(error(0.1) / error(0.05)) == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("RK4 energy drift on the harmonic oscillator is fourth order") {
  auto drift = [](double dt) {
    std::vector<double> y{1.0, 0.0};
    const int steps = static_cast<int>(std::lround(2 * 3.141592653589793 / dt));
    const double h = 2 * 3.141592653589793 / steps;
    for (int k = 0; k < steps; ++k) y = rk4_step(y, h, [](const std::vector<double>& v) { return std::vector<double>{v[1], -v[0]}; });
    return std::abs(y[0] * y[0] + y[1] * y[1] - 1.0);
  };
  CHECK(std::log2(drift(0.1) / drift(0.05)) > 3.8);
}

TEST_CASE("time step policies") {
  TimePolicy p;
  p.cfl = 0.3;
  CHECK(p.dt(0.125) == doctest::Approx(0.0375));
  p.mode = StepMode::Accuracy5;
  CHECK(p.dt(0.125) == doctest::Approx(0.3 * std::pow(0.125, 5.0 / 3.0)));
  p.mode = StepMode::Accuracy7;
  CHECK(p.dt(0.125) == doctest::Approx(0.3 * std::pow(0.125, 7.0 / 3.0)));
  WenoConfig cfg;
  cfg.dt_mode = DtMode::AccuracyScaled;
  cfg.scheme = Scheme::MrWeno7;
  CHECK(TimePolicy::for_config(cfg, 1.0).mode == StepMode::Accuracy7);
  cfg.scheme = Scheme::MrWeno5;
  CHECK(TimePolicy::for_config(cfg, 1.0).mode == StepMode::Accuracy5);
  cfg.dt_mode = DtMode::Linear;
  CHECK(TimePolicy::for_config(cfg, 2.0).mode == StepMode::Linear);
  CHECK(TimePolicy::for_config(cfg, 2.0).t_end == 2.0);
}

TEST_CASE("integration endpoints and step counts") {
  TimePolicy p;
  p.t_end = 0.0;
  const IntegrationResult none = integrate(scalar(2.0), linear(-1.0), p);
  CHECK(none.steps == 0);
  CHECK(none.u[0] == 2.0);

  const UniformGrid g = make_grid(-40, 40, 640);
  p.t_end = 16.0;
  const IntegrationResult r = integrate(StateField(g), [](const StateField& u) { return StateField(u.grid()); }, p);
  CHECK(r.steps == static_cast<long>(std::ceil(16.0 / (0.3 * 0.125))));
  CHECK(r.t == 16.0);
}

TEST_CASE("constant data stays constant under the DP operator") {
  const UniformGrid g = make_grid(-10, 10, 80);
  const PeriodicOperator a = build_dp_elliptic(g, EllipticOrder::Q6);
  const WenoConfig cfg;
  TimePolicy p;
  p.t_end = 1.0;
  const IntegrationResult r = integrate(StateField(g, std::vector<double>(80, 0.5)),
                                        [&](const StateField& u) { return dp_rhs(u, cfg, a); }, p);
  for (double v : r.u.values()) CHECK(v == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("runs are deterministic") {
  const UniformGrid g = make_grid(-10, 10, 80);
  const PeriodicOperator a = build_dp_elliptic(g, EllipticOrder::Q6);
  const WenoConfig cfg;
  const StateField u0 = sample_field(g, [](double x) { return std::exp(-std::abs(x)); });
  TimePolicy p;
  p.t_end = 2.0;
  const Rhs rhs = [&](const StateField& u) { return dp_rhs(u, cfg, a); };
  const IntegrationResult r1 = integrate(u0, rhs, p), r2 = integrate(u0, rhs, p);
  CHECK(r1.steps == r2.steps);
  for (int i = 0; i < g.size(); ++i) CHECK(r1.u[i] == r2.u[i]);
}

TEST_CASE("non-finite stages abort") {
  const Rhs bad = [](const StateField& u) {
    StateField r(u.grid());
    r[0] = std::nan("");
    return r;
  };
  CHECK_THROWS_AS(ssp_rk3_step(scalar(1.0), 0.1, bad), NumericalError);
  TimePolicy p;
  p.t_end = 1.0;
  CHECK_THROWS_AS(integrate(scalar(1.0), bad, p), NumericalError);
}
