#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hemato/model.hpp"
#include "hemato/state.hpp"

namespace hemato {

/// Initial data on [-tau, 0].
class History {
 public:
  static History constant(const SystemState& s);
  static History function(std::function<SystemState(double)> fn);

  SystemState operator()(double t) const;
  bool is_constant() const { return !fn_; }

 private:
  SystemState value_{};
  std::function<SystemState(double)> fn_;
};

struct IntegrateOptions {
  /// Upper bound on the step. The step is tau/m for the smallest integer m
  /// satisfying the bound. Unset selects tau/64 (or 0.01 when tau == 0).
  std::optional<double> max_step;
};

/// Dense RK4 solution: mesh states with their time derivatives, joined by
/// cubic Hermite segments.
class Trajectory {
 public:
  Trajectory(double tau, History history, std::vector<double> times, std::vector<SystemState> states,
             std::vector<SystemState> derivs);

  double tau() const { return tau_; }
  double t_begin() const { return -tau_; }
  double t_end() const { return times_.back(); }
  double step() const;

  const std::vector<double>& times() const { return times_; }
  const std::vector<SystemState>& states() const { return states_; }
  const std::vector<SystemState>& derivatives() const { return derivs_; }
  const History& history() const { return history_; }

  /// History for t <= 0, Hermite segment otherwise. Throws DomainError
  /// outside [-tau, t_end].
  SystemState interpolate(double t) const;

 private:
  double tau_;
  History history_;
  std::vector<double> times_;
  std::vector<SystemState> states_;
  std::vector<SystemState> derivs_;
};

/// Classical RK4 method of steps with the mesh aligned to multiples of tau.
/// Throws DivergenceError on non-finite states and InvariantViolation when a
/// component drops below -1e-6.
Trajectory integrate(const ModelParams& p, const History& history, double t_end,
                     const IntegrateOptions& opts = {});

/// Cubic Hermite interpolation on [t0, t1].
SystemState hermite(double t, double t0, double t1, const SystemState& y0, const SystemState& d0,
                    const SystemState& y1, const SystemState& d1);

}  // namespace hemato
