#include "dpweno/time_integration.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dpweno {

namespace {

void check_stage(const StateField& u, int stage) {
  for (int i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) {
      std::ostringstream msg;
      msg << "non-finite value at index " << i << " in stage " << stage;
      throw NumericalError(msg.str());
    }
  }
}

void check_stage(const std::vector<double>& y, int stage) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) {
      std::ostringstream msg;
      msg << "non-finite value at component " << i << " in stage " << stage;
      throw NumericalError(msg.str());
    }
  }
}

}  // namespace

StateField ssp_rk3_step(const StateField& u, double dt, const Rhs& rhs) {
  if (!(dt > 0.0)) throw std::invalid_argument("ssp_rk3_step: dt must be positive");
  const int n = u.size();
  const StateField l0 = rhs(u);
  StateField u1(u.grid());
  for (int i = 0; i < n; ++i) u1[i] = u[i] + dt * l0[i];
  check_stage(u1, 1);
  const StateField l1 = rhs(u1);
  StateField u2(u.grid());
  for (int i = 0; i < n; ++i) u2[i] = 0.75 * u[i] + 0.25 * (u1[i] + dt * l1[i]);
  check_stage(u2, 2);
  const StateField l2 = rhs(u2);
  StateField out(u.grid());
  for (int i = 0; i < n; ++i) out[i] = u[i] / 3.0 + 2.0 / 3.0 * (u2[i] + dt * l2[i]);
  check_stage(out, 3);
  return out;
}

std::vector<double> rk4_step(const std::vector<double>& y, double dt, const OdeRhs& f) {
  const std::size_t n = y.size();
  auto axpy = [&](const std::vector<double>& k, double h) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = y[i] + h * k[i];
    return r;
  };
  const auto k1 = f(y);
  const auto k2 = f(axpy(k1, 0.5 * dt));
  const auto k3 = f(axpy(k2, 0.5 * dt));
  const auto k4 = f(axpy(k3, dt));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  check_stage(out, 4);
  return out;
}

double TimePolicy::dt(double dx) const {
  switch (mode) {
    case StepMode::Accuracy5: return cfl * std::pow(dx, 5.0 / 3.0);
    case StepMode::Accuracy7: return cfl * std::pow(dx, 7.0 / 3.0);
    case StepMode::Linear: break;
  }
  return cfl * dx;
}

TimePolicy TimePolicy::for_config(const WenoConfig& cfg, double t_end) {
  TimePolicy p{cfg.cfl, StepMode::Linear, t_end};
  if (cfg.dt_mode == DtMode::AccuracyScaled) p.mode = cfg.order() == 7 ? StepMode::Accuracy7 : StepMode::Accuracy5;
  return p;
}

IntegrationResult integrate(const StateField& u0, const Rhs& rhs, const TimePolicy& policy, double t_start) {
  if (!(policy.cfl > 0.0)) throw std::invalid_argument("integrate: cfl must be positive");
  if (policy.t_end < t_start) throw std::invalid_argument("integrate: t_end precedes the start time");
  IntegrationResult r{u0, 0, t_start};
  const double dt = policy.dt(u0.grid().dx());
  while (r.t < policy.t_end) {
    double h = dt;
    bool last = false;
    if (policy.t_end - (r.t + h) <= 1e-9 * dt) {
      h = policy.t_end - r.t;
      last = true;
    }
    try {
      r.u = ssp_rk3_step(r.u, h, rhs);
    } catch (const NumericalError& e) {
      std::ostringstream msg;
      msg << e.what() << " at t = " << r.t << " (step " << r.steps + 1 << ")";
      throw NumericalError(msg.str());
    }
    ++r.steps;
    r.t = last ? policy.t_end : r.t + h;
  }
  return r;
}

}  // namespace dpweno
