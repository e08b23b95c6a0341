#pragma once

#include <optional>
#include <vector>

#include "hemato/dde.hpp"
#include "hemato/equilibria.hpp"

namespace hemato {

struct PeriodEstimate {
  double period = 0;
  double stddev = 0;
  std::size_t peaks = 0;
  double amplitude = 0;  ///< peak-to-trough height of the last full cycle
  double amplitude_ratio = 0;  ///< last over first
};

/// Peak times and heights (quadratic fit through mesh triples) of strict
/// local maxima of one component after `t_transient`.
struct Peak {
  double t = 0;
  double value = 0;
};
std::vector<Peak> find_peaks(const Trajectory& traj, Component c, double t_transient);

/// Mean peak-to-peak interval. nullopt with fewer than three peaks or when
/// the oscillation has decayed below 20% of its first amplitude.
std::optional<PeriodEstimate> detect_period(const Trajectory& traj, Component c, double t_transient);

enum class Asymptotics { converging, sustained_oscillation, diverging, unclassified };
const char* to_string(Asymptotics a);

struct AsymptoticsReport {
  Asymptotics verdict = Asymptotics::unclassified;
  double early_deviation = 0;
  double late_deviation = 0;
  std::optional<PeriodEstimate> period;
};

/// Relative deviation max_i |x_i - eq_i| / max(|eq_i|, 1e-9).
double relative_deviation(const SystemState& x, const SystemState& eq);

AsymptoticsReport classify_asymptotics(const Trajectory& traj, const Equilibrium& eq, double t_transient,
                                       Component c = Component::q);

struct InvariantCheck {
  double min_component = 0;
  double max_e = 0;
  double e_bound = 0;
  bool nonnegative = true;
  bool e_bounded = true;
  bool ok() const { return nonnegative && e_bounded; }
};

/// Nonnegativity (floor -1e-9) and E(t) <= max(E(0), f(0)/k) (+1e-9 relative).
InvariantCheck check_invariants(const Trajectory& traj, const ModelParams& p);

}  // namespace hemato
