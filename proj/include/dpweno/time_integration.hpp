#pragma once

#include <functional>
#include <vector>

#include "dpweno/grid.hpp"

namespace dpweno {

using Rhs = std::function<StateField(const StateField&)>;
using OdeRhs = std::function<std::vector<double>(const std::vector<double>&)>;

/// Three-stage SSP Runge-Kutta step; NumericalError on a non-finite stage.
StateField ssp_rk3_step(const StateField& u, double dt, const Rhs& rhs);

/// Classical RK4 step.
std::vector<double> rk4_step(const std::vector<double>& y, double dt, const OdeRhs& f);

enum class StepMode { Linear, Accuracy5, Accuracy7 };

struct TimePolicy {
  double cfl = 0.3;
  StepMode mode = StepMode::Linear;
  double t_end = 0.0;

  /// cfl*dx, cfl*dx^(5/3) or cfl*dx^(7/3).
  double dt(double dx) const;
  /// Linear, or the accuracy mode matching the scheme order.
  static TimePolicy for_config(const WenoConfig& cfg, double t_end);
};

struct IntegrationResult {
  StateField u;
  long steps = 0;
  double t = 0.0;
};

/// Marches from t_start to policy.t_end with SSP-RK3, shortening the last step to land on t_end.
IntegrationResult integrate(const StateField& u0, const Rhs& rhs, const TimePolicy& policy, double t_start = 0.0);

}  // namespace dpweno
