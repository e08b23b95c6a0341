#include "app.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hemato/errors.hpp"
#include "pipeline.hpp"

#ifndef HEMATO_VERSION
#define HEMATO_VERSION "unknown"
#endif

namespace hemato::app {

using nlohmann::json;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

namespace {

struct Globals {
  std::string config;
  std::string out_dir = ".";
  double grid_step = 0;
  std::uint64_t seed = 1;
};

struct SimulateArgs {
  double tau = 0, t_end = 0, transient = 0, max_step = 0;
  std::string history;
  std::string out;
  int stride = 0;
};

struct SweepArgs {
  double from = 0.1, to = 0, step = 0.1;
};

json manifest(const std::string& sub, const Globals& g, const Config& cfg, const Report& rep, double seconds) {
  json outputs = json::array();
  for (const auto& o : rep.outputs) outputs.push_back({{"file", o.file}, {"columns", o.columns}, {"rows", o.rows}});
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"tool", "hemato"},
          {"version", HEMATO_VERSION},
          {"subcommand", sub},
          {"config", {{"source", g.config.empty() ? "<default>" : g.config}, {"sha256", sha256_hex(cfg.text)}}},
          {"parameters", params_json(cfg)},
          {"seed", g.seed},
          {"outputs", outputs},
          {"checks", checks},
          {"passed", rep.all_passed()},
          {"summary", rep.summary},
          {"notes", rep.notes},
          {"duration_seconds", seconds}};
}

void print_summary(const Report& rep, std::ostream& out) {
  if (rep.summary.contains("partition"))
    for (const auto& iv : rep.summary["partition"])
      out << iv["stability"].get<std::string>() << " on [" << iv["lo"].get<double>() << ", " << iv["hi"].get<double>()
          << ")\n";
  for (const auto& n : rep.notes) out << "note: " << n << '\n';
  for (const auto& c : rep.checks)
    if (!c.passed) out << "check failed: " << c.name << " (" << c.detail << ")\n";
}

std::vector<double> sweep_grid(const SweepArgs& a, const Config& cfg) {
  const double to = a.to > 0 ? a.to : analysis_upper(cfg);
  if (!(a.step > 0) || !(a.from >= 0) || !(to >= a.from)) throw ConfigError("sweep: need 0 <= from <= to and step > 0");
  std::vector<double> taus;
  for (long i = 0;; ++i) {
    const double t = a.from + static_cast<double>(i) * a.step;
    if (t > to + 1e-12) break;
    taus.push_back(t);
  }
  return taus;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delayed stem-cell model: equilibria, stability switches and simulations", "hemato"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "INI configuration file (built-in reference parameters if omitted)");
  app.add_option("--out-dir", g.out_dir, "Directory for CSV files and run_manifest.json")->capture_default_str();
  auto* grid_opt = app.add_option("--grid-step", g.grid_step, "Delay grid spacing")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized self-checks")->capture_default_str();

  app.add_subcommand("equilibria", "Equilibria over the delay grid");
  app.add_subcommand("coeffs", "Linearization and characteristic coefficients over the delay grid");
  auto* scan_cmd = app.add_subcommand("scan", "S_n curves, stability switches and the stability partition");
  int n_max = -1;
  auto* nmax_opt = scan_cmd->add_option("--n-max", n_max, "Largest n of S_n")->check(CLI::NonNegativeNumber);

  auto* sim_cmd = app.add_subcommand("simulate", "Integrate the delayed system at one delay");
  SimulateArgs sa;
  auto* tau_opt = sim_cmd->add_option("--tau", sa.tau, "Delay (default: model.tau)")->check(CLI::NonNegativeNumber);
  auto* tend_opt = sim_cmd->add_option("--t-end", sa.t_end, "Final time")->check(CLI::PositiveNumber);
  auto* trans_opt = sim_cmd->add_option("--transient", sa.transient, "Start of the analysed window")
                        ->check(CLI::NonNegativeNumber);
  auto* step_opt = sim_cmd->add_option("--max-step", sa.max_step, "Step bound")->check(CLI::PositiveNumber);
  auto* hist_opt = sim_cmd->add_option("--history", sa.history, "Constant history 'q,m,e' or 'equilibrium*F'");
  auto* out_opt = sim_cmd->add_option("--out", sa.out, "Output CSV (default: OUT_DIR/simulation_tau_<tau>.csv)");
  auto* stride_opt = sim_cmd->add_option("--stride", sa.stride, "Write every n-th mesh point")->check(CLI::PositiveNumber);

  auto* sweep_cmd = app.add_subcommand("sweep", "Classify simulations over a delay grid");
  SweepArgs wa;
  sweep_cmd->add_option("--from", wa.from, "First delay")->capture_default_str();
  sweep_cmd->add_option("--to", wa.to, "Last delay (default: tau_max)");
  sweep_cmd->add_option("--step", wa.step, "Delay spacing")->capture_default_str();

  app.add_subcommand("reproduce", "Full pipeline: one CSV per figure plus the manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_config;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    Config cfg = g.config.empty() ? parse_config_text(default_config_text(), "<default>") : parse_config(g.config);
    if (grid_opt->count()) cfg.run.grid_step = g.grid_step;
    if (nmax_opt->count()) cfg.run.n_max = n_max;
    const fs::path dir(g.out_dir);
    fs::create_directories(dir);

    Report rep;
    if (sub == "equilibria") {
      run_equilibria(cfg, dir / "equilibria.csv", rep);
    } else if (sub == "coeffs") {
      run_coeffs(cfg, dir / "coefficients.csv", rep);
    } else if (sub == "scan") {
      run_scan(cfg, dir / "sn_curves.csv", dir / "switches.csv", rep);
    } else if (sub == "simulate") {
      auto spec = default_sim_spec(cfg, tau_opt->count() ? sa.tau : cfg.params.tau);
      if (tend_opt->count()) {
        spec.t_end = sa.t_end;
        if (!trans_opt->count()) spec.transient = spec.t_end / 3.0;
      }
      if (trans_opt->count()) spec.transient = sa.transient;
      if (step_opt->count()) spec.max_step = sa.max_step;
      if (hist_opt->count()) spec.history = parse_history(sa.history);
      if (stride_opt->count()) spec.stride = sa.stride;
      const fs::path file = out_opt->count() ? fs::path(sa.out) : dir / ("simulation_tau_" + format_number(spec.tau) + ".csv");
      if (file.has_parent_path()) fs::create_directories(file.parent_path());
      const auto s = run_simulation(cfg.params, spec, file);
      rep.outputs.push_back(*s.output);
      rep.add_check("trajectory_invariants", s.invariants.ok());
      rep.summary["tau"] = spec.tau;
      rep.summary["equilibrium"] = to_string(s.eq.kind);
      rep.summary["verdict"] = to_string(s.asymptotics.verdict);
      if (const auto& pe = s.asymptotics.period) {
        rep.summary["period"] = pe->period;
        rep.summary["amplitude"] = pe->amplitude;
      }
      out << "verdict: " << to_string(s.asymptotics.verdict) << '\n';
    } else if (sub == "sweep") {
      run_sweep(cfg, sweep_grid(wa, cfg), dir / "sweep.csv", rep);
    } else if (sub == "reproduce") {
      run_equilibria(cfg, dir / "fig1_equilibria.csv", rep);
      run_coeffs(cfg, dir / "fig2_coefficients.csv", rep);
      const auto scan = run_scan(cfg, dir / "fig3_4_sn_curves.csv", dir / "switches.csv", rep);
      std::vector<fs::path> files;
      for (std::size_t i = 0; i < cfg.run.sim_taus.size(); ++i) {
        const std::string stem = i < 4 ? "fig" + std::to_string(5 + i) : "sim" + std::to_string(i);
        files.push_back(dir / (stem + "_tau_" + format_number(cfg.run.sim_taus[i]) + ".csv"));
      }
      run_simulations(cfg, files, scan, rep);
      check_characteristic_identity(cfg, g.seed, rep);
    }

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream mf(dir / "run_manifest.json", std::ios::binary | std::ios::trunc);
    if (!mf) throw IoError("cannot write " + (dir / "run_manifest.json").string());
    mf << manifest(sub, g, cfg, rep, seconds).dump(2) << '\n';
    print_summary(rep, out);
    return rep.all_passed() ? exit_ok : exit_check;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return exit_config;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"hemato"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hemato::app
