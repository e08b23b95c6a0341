#include "hemato/trajectory_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hemato {
namespace {

double component(const SystemState& s, Component c) { return s[static_cast<std::size_t>(c)]; }

}  // namespace

std::vector<Peak> find_peaks(const Trajectory& traj, Component c, double t_transient) {
  const auto& t = traj.times();
  const auto& x = traj.states();
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] < t_transient) continue;
    const double y0 = component(x[i - 1], c);
    const double y1 = component(x[i], c);
    const double y2 = component(x[i + 1], c);
    if (!(y1 > y0 && y1 > y2)) continue;
    // Vertex of the parabola through the three samples (uniform spacing).
    const double curvature = y0 - 2.0 * y1 + y2;
    const double offset = 0.5 * (y0 - y2) / curvature;
    const double h = 0.5 * (t[i + 1] - t[i - 1]);
    peaks.push_back({t[i] + offset * h, y1 - 0.25 * (y0 - y2) * offset});
  }
  return peaks;
}

std::optional<PeriodEstimate> detect_period(const Trajectory& traj, Component c, double t_transient) {
  const auto peaks = find_peaks(traj, c, t_transient);
  if (peaks.size() < 3) return std::nullopt;

  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < peaks.size(); ++i) gaps.push_back(peaks[i + 1].t - peaks[i].t);
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
  double var = 0;
  for (double g : gaps) var += (g - mean) * (g - mean);
  var /= static_cast<double>(gaps.size());

  // Cycle amplitude: mean of the bounding peaks minus the trough between them.
  const auto& t = traj.times();
  const auto& x = traj.states();
  std::vector<double> amps;
  std::size_t idx = 0;
  for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
    while (idx < t.size() && t[idx] < peaks[i].t) ++idx;
    double trough = component(x[std::min(idx, t.size() - 1)], c);
    for (std::size_t k = idx; k < t.size() && t[k] <= peaks[i + 1].t; ++k) trough = std::min(trough, component(x[k], c));
    amps.push_back(0.5 * (peaks[i].value + peaks[i + 1].value) - trough);
  }

  PeriodEstimate est;
  est.period = mean;
  est.stddev = std::sqrt(var);
  est.peaks = peaks.size();
  est.amplitude = amps.back();
  est.amplitude_ratio = amps.front() > 0 ? amps.back() / amps.front() : 0.0;
  if (est.amplitude_ratio < 0.2) return std::nullopt;
  return est;
}

const char* to_string(Asymptotics a) {
  switch (a) {
    case Asymptotics::converging: return "converging";
    case Asymptotics::sustained_oscillation: return "sustained-oscillation";
    case Asymptotics::diverging: return "diverging";
    case Asymptotics::unclassified: return "unclassified";
  }
  return "?";
}

double relative_deviation(const SystemState& x, const SystemState& eq) {
  double d = 0;
  for (std::size_t i = 0; i < 3; ++i) d = std::max(d, std::fabs(x[i] - eq[i]) / std::max(std::fabs(eq[i]), 1e-9));
  return d;
}

AsymptoticsReport classify_asymptotics(const Trajectory& traj, const Equilibrium& eq, double t_transient,
                                       Component c) {
  AsymptoticsReport rep;
  const auto& t = traj.times();
  const auto& x = traj.states();
  const double t_end = traj.t_end();
  const double span = t_end - t_transient;
  if (!(span > 0)) return rep;

  auto window_max = [&](double a, double b) {
    double d = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= a && t[i] <= b) d = std::max(d, relative_deviation(x[i], eq.state));
    return d;
  };
  rep.early_deviation = window_max(t_transient, t_transient + 0.1 * span);
  rep.late_deviation = window_max(t_end - 0.1 * span, t_end);
  rep.period = detect_period(traj, c, t_transient);

  // A run that already sits on the equilibrium to rounding counts as converged.
  if (rep.late_deviation < 0.05 * rep.early_deviation || rep.early_deviation <= 1e-9) {
    rep.verdict = Asymptotics::converging;
    return rep;
  }
  if (rep.period && rep.period->amplitude_ratio >= 0.8 && rep.period->amplitude_ratio <= 1.25) {
    rep.verdict = Asymptotics::sustained_oscillation;
    return rep;
  }
  constexpr int segments = 10;
  std::vector<double> seg(segments);
  for (int s = 0; s < segments; ++s)
    seg[s] = window_max(t_transient + span * s / segments, t_transient + span * (s + 1) / segments);
  if (std::is_sorted(seg.begin(), seg.end()) && seg.back() > 10.0 * seg.front()) rep.verdict = Asymptotics::diverging;
  return rep;
}

InvariantCheck check_invariants(const Trajectory& traj, const ModelParams& p) {
  InvariantCheck chk;
  const auto& x = traj.states();
  chk.min_component = x.front().min_component();
  chk.max_e = x.front().e;
  for (const auto& s : x) {
    chk.min_component = std::min(chk.min_component, s.min_component());
    chk.max_e = std::max(chk.max_e, s.e);
  }
  chk.e_bound = std::max(x.front().e, p.r().f(0.0) / p.k);
  chk.nonnegative = chk.min_component >= -1e-9;
  chk.e_bounded = chk.max_e <= chk.e_bound * (1.0 + 1e-9) + 1e-12;
  return chk;
}

}  // namespace hemato
