#include "pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <future>
#include <random>
#include <sstream>

#include "hemato/errors.hpp"
#include "hemato/linearization.hpp"

namespace hemato::app {

using nlohmann::json;

void Report::add_output(const CsvWriter& w) { outputs.push_back({w.path().filename().string(), w.columns(), w.rows()}); }

void Report::add_check(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name), passed, std::move(detail)});
}

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

double analysis_upper(const Config& cfg) {
  const auto tm = tau_max(cfg.params);
  if (tm && std::isfinite(*tm)) return *tm;
  double hi = 3.0;
  for (double t : cfg.run.sim_taus) hi = std::max(hi, t);
  return hi;
}

Equilibrium equilibrium_at(const ModelParams& p, double tau) {
  if (auto eq = positive_equilibrium(p, tau)) return *eq;
  return trivial_equilibrium(p, tau);
}

namespace {

double parse_double(std::string_view s, std::string_view what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError(std::string(what) + ": expected a number, got '" + std::string(s) + "'");
  return v;
}

std::string tau_label(double tau) { return format_number(tau); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

HistorySpec parse_history(std::string_view text) {
  HistorySpec spec;
  constexpr std::string_view eq = "equilibrium";
  if (text.substr(0, eq.size()) == eq) {
    auto rest = text.substr(eq.size());
    spec.relative = true;
    spec.factor = 1.0;
    if (!rest.empty()) {
      if (rest.front() != '*') throw ConfigError("history: expected 'equilibrium*FACTOR', got '" + std::string(text) + "'");
      spec.factor = parse_double(rest.substr(1), "history factor");
    }
    if (!(spec.factor >= 0)) throw ConfigError("history: factor must be >= 0");
    return spec;
  }
  spec.relative = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto comma = text.find(',', start);
    if ((i < 2) == (comma == std::string_view::npos))
      throw ConfigError("history: expected three comma-separated values, got '" + std::string(text) + "'");
    spec.state[i] = parse_double(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start),
                                 "history component");
    start = comma + 1;
  }
  if (!spec.state.is_finite() || spec.state.min_component() < 0)
    throw ConfigError("history: components must be finite and nonnegative");
  return spec;
}

History make_history(const HistorySpec& spec, const Equilibrium& eq) {
  return History::constant(spec.relative ? spec.factor * eq.state : spec.state);
}

void run_equilibria(const Config& cfg, const fs::path& file, Report& rep) {
  const auto& p = cfg.params;
  const auto tm = tau_max(p);
  const auto grid = make_tau_grid(analysis_upper(cfg), cfg.run.grid_step);
  const auto* hill = dynamic_cast<const HillRates*>(p.rates.get());
  const double tol = 1e-9 * (p.delta + p.r().g_prime(0.0) + 1.0);

  CsvWriter w(file, {"tau", "Qstar", "Mstar", "Estar", "kind"});
  double worst_residual = 0, worst_closed = 0;
  std::size_t positive = 0;
  for (double tau : grid) {
    const auto eq = equilibrium_at(p, tau);
    w.row({format_number(tau), format_number(eq.state.q), format_number(eq.state.m), format_number(eq.state.e),
           to_string(eq.kind)});
    if (eq.kind != EquilibriumKind::positive) continue;
    ++positive;
    worst_residual = std::max(worst_residual, std::fabs(equilibrium_residual(p, eq.state.q, tau)));
    if (hill) {
      const auto cf = hill_equilibrium_closed_form(p, tau);
      for (std::size_t i = 0; i < 3; ++i)
        worst_closed = std::max(worst_closed, std::fabs(cf.state[i] - eq.state[i]) / std::fabs(cf.state[i]));
    }
  }
  rep.add_output(w);

  if (positive) {
    rep.add_check("equilibrium_residual", worst_residual <= tol, "max |R(Q*)| = " + fmt(worst_residual));
    if (hill) rep.add_check("closed_form_agreement", worst_closed <= 1e-9, "max relative gap = " + fmt(worst_closed));
  }
  if (!tm) {
    rep.summary["tau_max"] = nullptr;
    rep.notes.push_back("no positive equilibrium: trivial equilibrium only, which is " +
                        std::string(to_string(trivial_stability(p, 0.0))) + " at tau = 0");
  } else if (!std::isfinite(*tm)) {
    rep.summary["tau_max"] = "inf";
  } else {
    rep.summary["tau_max"] = *tm;
  }
  rep.summary["trivial_E"] = p.r().f(0.0) / p.k;
  rep.summary["positive_equilibrium"] = positive > 0;
}

void run_coeffs(const Config& cfg, const fs::path& file, Report& rep) {
  const auto& p = cfg.params;
  if (!tau_max(p)) {
    rep.notes.push_back("coefficients skipped: no positive equilibrium");
    return;
  }
  const auto grid = make_tau_grid(analysis_upper(cfg), cfg.run.grid_step);
  CsvWriter w(file, {"tau", "A", "B", "C", "D", "G", "H", "a1", "a2", "a3", "a4", "a5", "a6", "b1", "b2", "b3"});
  std::size_t violations = 0;
  std::string first;
  for (double tau : grid) {
    const auto eq = positive_equilibrium(p, tau);
    if (!eq) continue;
    const auto cc = char_coeffs(linearize(p, *eq, tau), p.mu, p.k);
    const auto& l = cc.lin;
    w.row(std::vector<double>{tau, l.A, l.B, l.C, l.D, l.G, l.H, cc.a[0], cc.a[1], cc.a[2], cc.a[3], cc.a[4], cc.a[5],
                              cc.b1, cc.b2, cc.b3});
    bool ok = l.C > 0 && l.D > 0 && l.G > 0 && l.H > 0 && l.A - l.B >= -1e-12 * l.A && l.D - l.C > 0;
    for (int j = 0; j < 3; ++j) ok = ok && cc.a[j] + cc.a[j + 3] > 0;
    if (!ok && violations++ == 0) first = "first at tau = " + format_number(tau);
  }
  rep.add_output(w);
  rep.add_check("coefficient_signs", violations == 0,
                violations ? std::to_string(violations) + " grid points violate, " + first : "all grid points");
}

std::optional<ScanResult> run_scan(const Config& cfg, const fs::path& curves_file, const fs::path& switches_file,
                                   Report& rep) {
  const auto& p = cfg.params;
  if (!tau_max(p)) {
    rep.notes.push_back("scan skipped: no positive equilibrium");
    return std::nullopt;
  }
  const auto grid = make_tau_grid(analysis_upper(cfg), cfg.run.grid_step);
  auto res = scan(p, grid, cfg.run.n_max);

  CsvWriter curves(curves_file, {"tau", "n", "branch", "S_value"});
  for (const auto& c : res.curves)
    for (const auto& s : c.samples)
      curves.row({format_number(s.tau), std::to_string(c.n), std::to_string(c.branch), format_number(s.value)});
  rep.add_output(curves);

  CsvWriter sw(switches_file, {"tau_star", "omega_star", "n", "transversality", "direction", "residual"});
  double worst = 0;
  json crossings = json::array();
  for (const auto& r : res.reports) {
    sw.row({format_number(r.tau_star), format_number(r.omega_star), std::to_string(r.n),
            std::to_string(r.transversality), to_string(r.direction), format_number(r.residual)});
    worst = std::max(worst, r.residual);
    crossings.push_back({{"tau_star", r.tau_star},
                         {"omega_star", r.omega_star},
                         {"n", r.n},
                         {"branch", r.branch},
                         {"direction", to_string(r.direction)}});
  }
  rep.add_output(sw);
  rep.add_check("switch_residual", worst < 1e-8, "max residual = " + fmt(worst));

  // S_n decreases in n at every delay where both are defined.
  std::size_t bad = 0;
  for (const auto& a : res.curves)
    for (const auto& b : res.curves) {
      if (a.branch != b.branch || b.n != a.n + 1) continue;
      for (const auto& sa : a.samples)
        for (const auto& sb : b.samples)
          if (sa.tau == sb.tau && !(sa.value > sb.value)) ++bad;
    }
  rep.add_check("sn_monotone_in_n", bad == 0, std::to_string(bad) + " violations");

  json partition = json::array();
  for (const auto& iv : res.partition)
    partition.push_back({{"lo", iv.lo}, {"hi", iv.hi}, {"stability", to_string(iv.stability)}});
  json windows = json::array();
  for (const auto& w : res.root_windows) windows.push_back({{"lo", w.lo}, {"hi", w.hi}});
  rep.summary["stable_at_zero"] = res.stable_at_zero;
  rep.summary["root_windows"] = windows;
  rep.summary["crossings"] = crossings;
  rep.summary["partition"] = partition;
  return res;
}

SimSpec default_sim_spec(const Config& cfg, double tau) {
  SimSpec s;
  s.tau = tau;
  s.t_end = cfg.run.sim_t_end > 0 ? cfg.run.sim_t_end : std::max(1200.0, 900.0 * tau);
  s.transient = cfg.run.sim_transient > 0 ? cfg.run.sim_transient : s.t_end / 3.0;
  if (cfg.run.max_step > 0) s.max_step = cfg.run.max_step;
  s.history.relative = true;
  s.history.factor = cfg.run.history_factor;
  s.stride = std::max(1, cfg.run.output_stride);
  return s;
}

SimOutcome run_simulation(const ModelParams& base, const SimSpec& spec, const std::optional<fs::path>& file) {
  if (!(spec.transient >= 0 && spec.transient < spec.t_end))
    throw ConfigError("simulate: transient must lie in [0, t_end)");
  const auto p = base.with_tau(spec.tau);
  SimOutcome out;
  out.tau = spec.tau;
  out.eq = equilibrium_at(p, spec.tau);
  const auto traj = integrate(p, make_history(spec.history, out.eq), spec.t_end, {spec.max_step});

  if (file) {
    CsvWriter w(*file, {"t", "Q", "M", "E"});
    const auto& t = traj.times();
    const auto& x = traj.states();
    const auto stride = static_cast<std::size_t>(std::max(1, spec.stride));
    for (std::size_t i = 0; i < t.size(); ++i)
      if (i % stride == 0 || i + 1 == t.size()) w.row(std::vector<double>{t[i], x[i].q, x[i].m, x[i].e});
    out.output = OutputRecord{w.path().filename().string(), w.columns(), w.rows()};
  }
  out.asymptotics = classify_asymptotics(traj, out.eq, spec.transient);
  out.invariants = check_invariants(traj, p);
  return out;
}

namespace {

Stability expected_stability(const ModelParams& p, const SimOutcome& s, const std::optional<ScanResult>& scan) {
  if (s.eq.kind == EquilibriumKind::trivial) {
    switch (trivial_stability(p, s.tau)) {
      case TrivialVerdict::stable: return Stability::stable;
      case TrivialVerdict::unstable: return Stability::unstable;
      case TrivialVerdict::boundary: return Stability::unknown;
    }
  }
  if (!scan) return Stability::unknown;
  for (const auto& r : scan->reports)
    if (std::fabs(r.tau_star - s.tau) < 0.05) return Stability::unknown;
  for (const auto& iv : scan->partition)
    if (s.tau >= iv.lo && s.tau < iv.hi) return iv.stability;
  return Stability::unknown;
}

json period_json(const std::optional<PeriodEstimate>& pe) {
  if (!pe) return nullptr;
  return {{"period", pe->period},
          {"stddev", pe->stddev},
          {"peaks", pe->peaks},
          {"amplitude", pe->amplitude},
          {"amplitude_ratio", pe->amplitude_ratio}};
}

}  // namespace

std::vector<SimOutcome> run_simulations(const Config& cfg, const std::vector<fs::path>& files,
                                        const std::optional<ScanResult>& scan, Report& rep) {
  const auto& taus = cfg.run.sim_taus;
  std::vector<std::future<SimOutcome>> jobs;
  for (std::size_t i = 0; i < taus.size(); ++i)
    jobs.push_back(std::async(std::launch::async, [&cfg, tau = taus[i], file = files.at(i)] {
      return run_simulation(cfg.params, default_sim_spec(cfg, tau), file);
    }));
  std::vector<SimOutcome> out;
  for (auto& j : jobs) out.push_back(j.get());

  json sims = json::array();
  for (const auto& s : out) {
    const std::string label = tau_label(s.tau);
    rep.outputs.push_back(*s.output);
    rep.add_check("invariants_tau_" + label, s.invariants.ok(),
                  "min component " + fmt(s.invariants.min_component) + ", max E " + fmt(s.invariants.max_e) +
                      " <= " + fmt(s.invariants.e_bound));
    const auto expected = expected_stability(cfg.params, s, scan);
    const auto verdict = s.asymptotics.verdict;
    std::string detail = std::string("verdict ") + to_string(verdict) + ", expected " + to_string(expected);
    if (expected == Stability::unknown) {
      rep.add_check("regime_tau_" + label, true, detail + " (not checked)");
    } else {
      const bool converging = verdict == Asymptotics::converging;
      rep.add_check("regime_tau_" + label, converging == (expected == Stability::stable), detail);
    }
    sims.push_back({{"tau", s.tau},
                    {"file", s.output->file},
                    {"equilibrium", to_string(s.eq.kind)},
                    {"verdict", to_string(verdict)},
                    {"period", period_json(s.asymptotics.period)}});
  }
  rep.summary["simulations"] = sims;
  return out;
}

void run_sweep(const Config& cfg, const std::vector<double>& taus, const fs::path& file, Report& rep) {
  std::vector<std::future<SimOutcome>> jobs;
  for (double tau : taus)
    jobs.push_back(std::async(std::launch::async, [&cfg, tau] {
      return run_simulation(cfg.params, default_sim_spec(cfg, tau), std::nullopt);
    }));
  CsvWriter w(file, {"tau", "verdict", "period", "amplitude"});
  std::size_t bad = 0;
  for (auto& j : jobs) {
    const auto s = j.get();
    const auto& pe = s.asymptotics.period;
    w.row({format_number(s.tau), to_string(s.asymptotics.verdict),
           pe ? format_number(pe->period) : std::string(), pe ? format_number(pe->amplitude) : std::string()});
    if (!s.invariants.ok()) ++bad;
  }
  rep.add_output(w);
  rep.add_check("trajectory_invariants", bad == 0, std::to_string(bad) + " runs violate");
}

void check_characteristic_identity(const Config& cfg, std::uint64_t seed, Report& rep) {
  const auto& p = cfg.params;
  if (!tau_max(p)) return;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(0.0, analysis_upper(cfg)), uz(0.0, 10.0);
  double worst = 0;
  for (int i = 0; i < 32; ++i) {
    const double tau = ut(rng), z = uz(rng);
    const auto eq = positive_equilibrium(p, tau);
    if (!eq) continue;
    const auto cc = char_coeffs(linearize(p, *eq, tau), p.mu, p.k);
    const std::complex<double> iw(0.0, std::sqrt(z));
    const double pp = std::norm(eval_p(cc, iw)), qq = std::norm(eval_q(cc, iw));
    worst = std::max(worst, std::fabs(h_value(cc, z) - (pp - qq)) / (pp + qq));
  }
  rep.add_check("characteristic_identity", worst <= 1e-9, "max relative gap = " + fmt(worst));
}

json params_json(const Config& cfg) {
  const auto& p = cfg.params;
  json j;
  j["model"] = {{"delta", p.delta}, {"gamma", p.gamma}, {"mu", p.mu}, {"k", p.k}, {"tau", p.tau}};
  json rates = {{"family", std::string(p.r().family())}};
  if (const auto* h = dynamic_cast<const HillRates*>(p.rates.get())) {
    const auto& hp = h->params();
    rates.update({{"beta0", hp.beta0}, {"G", hp.G}, {"a", hp.a}, {"K", hp.K}, {"r", hp.r}});
  }
  j["rates"] = rates;
  const auto& r = cfg.run;
  j["run"] = {{"grid_step", r.grid_step},         {"n_max", r.n_max},
              {"sim_taus", r.sim_taus},           {"history_factor", r.history_factor},
              {"max_step", r.max_step},           {"sim_t_end", r.sim_t_end},
              {"sim_transient", r.sim_transient}, {"output_stride", r.output_stride}};
  return j;
}

}  // namespace hemato::app
