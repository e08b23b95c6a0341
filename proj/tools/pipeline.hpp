#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "csv.hpp"
#include "hemato/config.hpp"
#include "hemato/dde.hpp"
#include "hemato/equilibria.hpp"
#include "hemato/stability_switch.hpp"
#include "hemato/trajectory_analysis.hpp"

namespace hemato::app {

namespace fs = std::filesystem;

struct OutputRecord {
  std::string file;
  std::vector<std::string> columns;
  std::size_t rows = 0;
};

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// Everything a run contributes to its manifest.
struct Report {
  std::vector<OutputRecord> outputs;
  std::vector<Check> checks;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> notes;

  void add_output(const CsvWriter& w);
  void add_check(std::string name, bool passed, std::string detail = {});
  bool all_passed() const;
};

/// Upper end of the delay range analysed: tau_max when finite, otherwise
/// the largest simulated delay (at least 3).
double analysis_upper(const Config& cfg);

/// Positive equilibrium when it exists, the trivial one otherwise.
Equilibrium equilibrium_at(const ModelParams& p, double tau);

/// Either a constant triple or a multiple of the equilibrium.
struct HistorySpec {
  bool relative = true;
  double factor = 1.1;
  SystemState state;
};

/// "q,m,e", "equilibrium" or "equilibrium*F". Throws ConfigError.
HistorySpec parse_history(std::string_view text);
History make_history(const HistorySpec& spec, const Equilibrium& eq);

void run_equilibria(const Config& cfg, const fs::path& file, Report& rep);
void run_coeffs(const Config& cfg, const fs::path& file, Report& rep);
std::optional<ScanResult> run_scan(const Config& cfg, const fs::path& curves_file, const fs::path& switches_file,
                                   Report& rep);

struct SimSpec {
  double tau = 0;
  double t_end = 0;
  double transient = 0;
  std::optional<double> max_step;
  HistorySpec history;
  int stride = 1;
};

/// Horizon max(1200, 900 tau) and a third of it as transient unless the
/// config overrides them.
SimSpec default_sim_spec(const Config& cfg, double tau);

struct SimOutcome {
  double tau = 0;
  Equilibrium eq;
  AsymptoticsReport asymptotics;
  InvariantCheck invariants;
  std::optional<OutputRecord> output;
};

/// Integrates, writes t,Q,M,E every `stride` mesh points (plus the last) when
/// `file` is given, and classifies the run. Touches no state but its own file.
SimOutcome run_simulation(const ModelParams& p, const SimSpec& spec, const std::optional<fs::path>& file);

/// Simulations at cfg.run.sim_taus, run concurrently, with invariant and
/// regime-consistency checks against the expected stability.
std::vector<SimOutcome> run_simulations(const Config& cfg, const std::vector<fs::path>& files,
                                        const std::optional<ScanResult>& scan, Report& rep);

void run_sweep(const Config& cfg, const std::vector<double>& taus, const fs::path& file, Report& rep);

/// Spot checks of h(z) = |P(i sqrt z)|^2 - |Q(i sqrt z)|^2 at seeded random points.
void check_characteristic_identity(const Config& cfg, std::uint64_t seed, Report& rep);

nlohmann::json params_json(const Config& cfg);

}  // namespace hemato::app
