#include "hemato/dde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hemato/errors.hpp"

namespace hemato {

History History::constant(const SystemState& s) {
  History h;
  h.value_ = s;
  return h;
}

History History::function(std::function<SystemState(double)> fn) {
  History h;
  h.fn_ = std::move(fn);
  return h;
}

SystemState History::operator()(double t) const { return fn_ ? fn_(t) : value_; }

SystemState hermite(double t, double t0, double t1, const SystemState& y0, const SystemState& d0,
                    const SystemState& y1, const SystemState& d1) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double one_minus = 1.0 - s;
  const double h00 = (1.0 + 2.0 * s) * one_minus * one_minus;
  const double h10 = s * one_minus * one_minus;
  const double h01 = s2 * (3.0 - 2.0 * s);
  const double h11 = s2 * (s - 1.0);
  return h00 * y0 + (h10 * h) * d0 + h01 * y1 + (h11 * h) * d1;
}

Trajectory::Trajectory(double tau, History history, std::vector<double> times, std::vector<SystemState> states,
                       std::vector<SystemState> derivs)
    : tau_(tau),
      history_(std::move(history)),
      times_(std::move(times)),
      states_(std::move(states)),
      derivs_(std::move(derivs)) {
  if (times_.size() < 2 || states_.size() != times_.size() || derivs_.size() != times_.size())
    throw DomainError("Trajectory: need at least two mesh points with matching states and derivatives");
  if (!std::is_sorted(times_.begin(), times_.end()) ||
      std::adjacent_find(times_.begin(), times_.end()) != times_.end())
    throw DomainError("Trajectory: mesh times must be strictly increasing");
}

double Trajectory::step() const { return times_[1] - times_[0]; }

SystemState Trajectory::interpolate(double t) const {
  const double lo = times_.front() - tau_;
  if (!(t >= lo && t <= times_.back())) {
    std::ostringstream os;
    os << "Trajectory::interpolate: t = " << t << " outside [" << lo << ", " << times_.back() << "]";
    throw DomainError(os.str());
  }
  if (t < times_.front()) return history_(t);
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t i = static_cast<std::size_t>(std::distance(times_.begin(), it));
  i = std::min(i == 0 ? 0 : i - 1, times_.size() - 2);
  if (t == times_[i]) return states_[i];
  if (t == times_[i + 1]) return states_[i + 1];
  return hermite(t, times_[i], times_[i + 1], states_[i], derivs_[i], states_[i + 1], derivs_[i + 1]);
}

Trajectory integrate(const ModelParams& p, const History& history, double t_end, const IntegrateOptions& opts) {
  if (!(t_end > 0)) throw DomainError("integrate: t_end must be > 0");
  if (!(p.tau >= 0)) throw DomainError("integrate: tau must be >= 0");
  const double tau = p.tau;

  long m = 0;  // steps per delay interval
  double h = 0;
  if (tau > 0) {
    const double cap = opts.max_step.value_or(tau / 64.0);
    if (!(cap > 0)) throw DomainError("integrate: max_step must be > 0");
    m = std::max(1L, static_cast<long>(std::ceil(tau / cap - 1e-9)));
    h = tau / static_cast<double>(m);
  } else {
    h = opts.max_step.value_or(0.01);
    if (!(h > 0)) throw DomainError("integrate: max_step must be > 0");
  }
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));

  std::vector<double> times(steps + 1);
  std::vector<SystemState> x(steps + 1);
  std::vector<SystemState> dx(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) times[i] = static_cast<double>(i) * h;

  const bool delayed_system = tau > 0;
  // State at mesh index j, which is negative inside the history interval.
  auto lagged = [&](long j) { return j < 0 ? history(static_cast<double>(j) * h) : x[static_cast<std::size_t>(j)]; };
  auto lagged_mid = [&](long j) {
    if (j < 0) return history((static_cast<double>(j) + 0.5) * h);
    const auto u = static_cast<std::size_t>(j);
    return 0.5 * (x[u] + x[u + 1]) + (h / 8.0) * (dx[u] - dx[u + 1]);
  };

  x[0] = history(0.0);
  if (!x[0].is_finite() || x[0].min_component() < 0)
    throw InvalidStateError("integrate: history must be finite and nonnegative at t = 0");
  dx[0] = rhs(x[0], delayed_system ? lagged(-m) : x[0], p);

  for (std::size_t n = 0; n < steps; ++n) {
    const long j = static_cast<long>(n) - m;
    const SystemState& xn = x[n];
    SystemState k1 = dx[n];
    SystemState s2 = xn + (0.5 * h) * k1;
    SystemState k2, k3, k4;
    if (delayed_system) {
      const SystemState mid = lagged_mid(j);
      k2 = rhs(s2, mid, p);
      SystemState s3 = xn + (0.5 * h) * k2;
      k3 = rhs(s3, mid, p);
      k4 = rhs(xn + h * k3, lagged(j + 1), p);
    } else {
      k2 = rhs(s2, s2, p);
      SystemState s3 = xn + (0.5 * h) * k2;
      k3 = rhs(s3, s3, p);
      SystemState s4 = xn + h * k3;
      k4 = rhs(s4, s4, p);
    }
    SystemState next = xn + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.is_finite()) throw DivergenceError("integrate: state became non-finite", times[n]);
    if (next.min_component() < -1e-6) {
      std::ostringstream os;
      os << "integrate: negative component " << next.min_component() << " at t = " << times[n + 1];
      throw InvariantViolation(os.str());
    }
    x[n + 1] = next;
    dx[n + 1] = rhs(next, delayed_system ? lagged(static_cast<long>(n + 1) - m) : next, p);
  }
  return Trajectory(tau, history, std::move(times), std::move(x), std::move(dx));
}

}  // namespace hemato
