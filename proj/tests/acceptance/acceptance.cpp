// Acceptance checks for the reference parameter set. One PASS/FAIL line per
// criterion; the exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hemato/cubic.hpp"
#include "hemato/dde.hpp"
#include "hemato/equilibria.hpp"
#include "hemato/linearization.hpp"
#include "hemato/stability_switch.hpp"
#include "hemato/trajectory_analysis.hpp"
#include "support/oracles.hpp"

using namespace hemato;

namespace {

// Tolerances and runtime limits.
constexpr double kTauMaxTarget = 2.99, kTauMaxTol = 0.01, kTauMaxMs = 1.0;
constexpr double kLimitOffset = 1e-6, kLimitTol = 1e-3, kTrivialE = 2346.4, kTrivialETol = 0.5, kLimitMs = 10.0;
constexpr int kWindowGrid = 600;
constexpr double kWindowEnd = 2.92, kWindowTol = 0.01, kWindowSignEnd = 2.9, kWindowMs = 1000.0;
constexpr double kTau1 = 1.40, kTau1Tol = 0.05, kTau2 = 2.82, kTau2Tol = 0.02, kResidualTol = 1e-8, kScanMs = 10000.0;
constexpr double kScanGridStep = 0.005;
constexpr double kRegimeMs = 30000.0;
constexpr double kPeriod1 = 100, kPeriod1Tol = 15, kPeriod2 = 220, kPeriod2Tol = 25;
constexpr double kIdentityTol = 1e-9, kCubicTol = 1e-8, kClosedFormTol = 1e-9, kSlopeLo = 3.5, kSlopeHi = 4.5;
constexpr double kPropertyMs = 60000.0;
constexpr double kHistoryFactor = 1.1;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail, double ms, double limit_ms) {
  const bool in_time = ms < limit_ms;
  const bool pass = ok && in_time;
  if (!pass) ++failures;
  char limit[48] = "no limit";
  if (std::isfinite(limit_ms)) std::snprintf(limit, sizeof limit, "limit %.6g ms", limit_ms);
  std::printf("[%s] %d %s: %s; %.3g ms (%s)%s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str(), ms, limit,
              in_time ? "" : " TOO SLOW");
  std::fflush(stdout);
}

template <class F>
double time_ms(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double x, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

struct Run {
  Trajectory traj;
  Equilibrium eq;
  AsymptoticsReport rep;
  InvariantCheck inv;
};

Run simulate(double tau, double t_end, double transient) {
  const auto p = reference_params(tau);
  const auto eq = *positive_equilibrium(p, tau);
  auto traj = integrate(p, History::constant(kHistoryFactor * eq.state), t_end);
  auto rep = classify_asymptotics(traj, eq, transient);
  auto inv = check_invariants(traj, p);
  return {std::move(traj), eq, rep, inv};
}

bool all_invariants_ok = true;

void criterion_tau_max() {
  const auto p = reference_params();
  std::optional<double> tm;
  constexpr int reps = 1000;
  const double ms = time_ms([&] {
                      for (int i = 0; i < reps; ++i) tm = tau_max(p);
                    }) /
                    reps;
  const bool ok = tm && std::fabs(*tm - kTauMaxTarget) <= kTauMaxTol;
  report(1, "existence threshold", ok, "tau_max = " + (tm ? num(*tm, 8) : std::string("none")) + " (target " +
                                           num(kTauMaxTarget) + " +- " + num(kTauMaxTol) + ")",
         ms, kTauMaxMs);
}

void criterion_trivial_limit() {
  const auto p = reference_params();
  std::optional<Equilibrium> eq;
  double e0 = 0;
  const double ms = time_ms([&] {
    const double tau = *tau_max(p) - kLimitOffset;
    eq = positive_equilibrium(p, tau);
    e0 = p.r().f(0.0) / p.k;
  });
  double gap = INFINITY;
  if (eq) gap = std::max({std::fabs(eq->state.q), std::fabs(eq->state.m), std::fabs(eq->state.e - e0)});
  const bool ok = gap <= kLimitTol && std::fabs(e0 - kTrivialE) <= kTrivialETol;
  std::string detail = "f(0)/k = " + num(e0, 7) + " (target " + num(kTrivialE) + " +- " + num(kTrivialETol) + ")";
  if (eq)
    detail += ", equilibrium at tau_max - " + num(kLimitOffset) + " = (" + num(eq->state.q) + ", " +
              num(eq->state.m) + ", " + num(eq->state.e, 7) + "), max gap " + num(gap) + " (limit " +
              num(kLimitTol) + ")";
  else
    detail += ", no equilibrium found";
  report(2, "trivial-equilibrium limit", ok, detail, ms, kLimitMs);
}

void criterion_root_window() {
  const auto p = reference_params();
  double window_end = NAN;
  bool starts_at_zero = false, single_window = true, signs_ok = true;
  const double ms = time_ms([&] {
    const double tm = *tau_max(p);
    auto has_roots = [&](double tau) {
      const auto cc = char_coeffs(linearize(p, *positive_equilibrium(p, tau), tau), p.mu, p.k);
      return h_has_positive_roots(cc.b1, cc.b2, cc.b3);
    };
    std::vector<bool> in(kWindowGrid);
    for (int i = 0; i < kWindowGrid; ++i) {
      const double tau = tm * i / kWindowGrid;
      in[i] = has_roots(tau);
      const auto cc = char_coeffs(linearize(p, *positive_equilibrium(p, tau), tau), p.mu, p.k);
      if (tau <= kWindowSignEnd && !(cc.b2 > 0 && cc.b3 < 0)) signs_ok = false;
    }
    starts_at_zero = in[0];
    int edges = 0;
    for (int i = 1; i < kWindowGrid; ++i)
      if (in[i] != in[i - 1]) ++edges;
    single_window = edges <= 1;
    int last = -1;
    for (int i = 0; i < kWindowGrid; ++i)
      if (in[i]) last = i;
    if (last < 0) return;
    if (last == kWindowGrid - 1) {
      window_end = tm;
      return;
    }
    double lo = tm * last / kWindowGrid, hi = tm * (last + 1) / kWindowGrid;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (has_roots(mid) ? lo : hi) = mid;
    }
    window_end = 0.5 * (lo + hi);
  });
  const bool ok = starts_at_zero && single_window && signs_ok && std::fabs(window_end - kWindowEnd) <= kWindowTol;
  report(3, "root-existence window", ok,
         "I = [0, " + num(window_end, 8) + ") (target end " + num(kWindowEnd) + " +- " + num(kWindowTol) +
             "), starts at 0: " + (starts_at_zero ? "yes" : "no") + ", single window: " +
             (single_window ? "yes" : "no") + ", b2 > 0 and b3 < 0 on [0, " + num(kWindowSignEnd) +
             "]: " + (signs_ok ? "yes" : "no"),
         ms, kWindowMs);
}

void criterion_switches() {
  const auto p = reference_params();
  ScanResult res;
  const double ms = time_ms([&] { res = scan(p, make_tau_grid(*tau_max(p), kScanGridStep), 1); });
  bool ok = res.reports.size() == 2;
  std::string detail = std::to_string(res.reports.size()) + " crossings";
  for (const auto& r : res.reports) {
    detail += ", tau* = " + num(r.tau_star, 7) + " " + to_string(r.direction) + " (n = " + std::to_string(r.n) +
              ", residual " + num(r.residual, 2) + ")";
    ok = ok && r.residual < kResidualTol;
  }
  if (res.reports.size() == 2) {
    const auto& a = res.reports[0];
    const auto& b = res.reports[1];
    ok = ok && std::fabs(a.tau_star - kTau1) <= kTau1Tol && a.direction == Direction::destabilizing;
    ok = ok && std::fabs(b.tau_star - kTau2) <= kTau2Tol && b.direction == Direction::stabilizing;
  }
  bool s1_rootless = true;
  for (const auto& c : res.curves)
    if (c.n == 1 && !c.roots.empty()) s1_rootless = false;
  ok = ok && s1_rootless;
  detail += std::string(", S_1 rootless: ") + (s1_rootless ? "yes" : "no");
  report(4, "stability switches", ok, detail, ms, kScanMs);
}

void criterion_regimes() {
  struct Case {
    double tau;
    Asymptotics expected;
  };
  const Case cases[] = {{0.5, Asymptotics::converging},
                        {1.4, Asymptotics::sustained_oscillation},
                        {2.8, Asymptotics::sustained_oscillation},
                        {2.9, Asymptotics::converging}};
  bool ok = true;
  std::string detail;
  const double ms = time_ms([&] {
    for (const auto& c : cases) {
      const double t_end = std::max(1200.0, 900.0 * c.tau);
      const auto r = simulate(c.tau, t_end, t_end / 3);
      all_invariants_ok = all_invariants_ok && r.inv.ok();
      ok = ok && r.rep.verdict == c.expected;
      if (!detail.empty()) detail += ", ";
      detail += "tau " + num(c.tau) + " " + to_string(r.rep.verdict) + " (expected " + to_string(c.expected) + ")";
    }
  });
  report(5, "regime reproduction", ok, detail, ms, kRegimeMs);
}

void criterion_periods() {
  struct Case {
    double tau, t_end, transient, target, tol;
  };
  const Case cases[] = {{1.4, 1200, 400, kPeriod1, kPeriod1Tol}, {2.8, 2500, 800, kPeriod2, kPeriod2Tol}};
  bool ok = true;
  std::string detail;
  const double ms = time_ms([&] {
    for (const auto& c : cases) {
      const auto r = simulate(c.tau, c.t_end, c.transient);
      all_invariants_ok = all_invariants_ok && r.inv.ok();
      const auto pe = detect_period(r.traj, Component::q, c.transient);
      ok = ok && pe && std::fabs(pe->period - c.target) <= c.tol;
      if (!detail.empty()) detail += ", ";
      detail += "tau " + num(c.tau) + " period " + (pe ? num(pe->period, 5) : std::string("none")) + " (target " +
                num(c.target) + " +- " + num(c.tol) + ")";
    }
  });
  report(6, "long-period oscillations", ok, detail, ms, INFINITY);
}

void criterion_properties() {
  std::vector<std::string> failed;
  auto sub = [&](const char* name, bool ok) {
    if (!ok) failed.push_back(name);
  };
  const double ms = time_ms([&] {
    const auto p = reference_params();
    const double tm = *tau_max(p);
    auto coeffs = [&](double tau) { return char_coeffs(linearize(p, *positive_equilibrium(p, tau), tau), p.mu, p.k); };

    bool signs = true;
    for (int i = 0; i < 200; ++i) {
      const auto cc = coeffs(tm * i / 200.0);
      const auto& l = cc.lin;
      signs = signs && l.C > 0 && l.D > 0 && l.G > 0 && l.H > 0 && l.A - l.B >= -1e-12 * l.A && l.D - l.C > 0;
      for (int j = 0; j < 3; ++j) signs = signs && cc.a[j] + cc.a[j + 3] > 0;
    }
    sub("coefficient signs", signs);

    std::mt19937_64 rng(2024);
    bool identity = true;
    std::uniform_real_distribution<double> ut(0, tm), uz(0, 5);
    for (int i = 0; i < 100; ++i) {
      const auto cc = coeffs(ut(rng));
      const double z = uz(rng);
      const std::complex<double> iw(0, std::sqrt(z));
      const double pp = std::norm(eval_p(cc, iw)), qq = std::norm(eval_q(cc, iw));
      identity = identity && std::fabs(h_value(cc, z) - (pp - qq)) <= kIdentityTol * (pp + qq);
    }
    sub("h identity", identity);

    bool cubic = true;
    std::uniform_real_distribution<double> uc(-10, 10);
    int compared = 0;
    for (int i = 0; i < 300; ++i) {
      const double b1 = uc(rng), b2 = uc(rng), b3 = uc(rng);
      std::vector<double> ref;
      for (auto z : oracle::companion_roots(b1, b2, b3))
        if (std::fabs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z))) ref.push_back(z.real());
      std::sort(ref.begin(), ref.end());
      const auto got = real_cubic_roots(b1, b2, b3);
      if (got.size() != ref.size()) continue;
      ++compared;
      for (std::size_t j = 0; j < got.size(); ++j)
        cubic = cubic && std::fabs(got[j] - ref[j]) <= kCubicTol * std::max(1.0, std::fabs(ref[j]));
    }
    sub("cubic roots", cubic && compared >= 295);

    bool rh = true;
    auto logu = [&rng](double lo, double hi) {
      return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
    };
    for (int checked = 0; checked < 500;) {
      LinCoeffs l;
      l.B = logu(1e-3, 5);
      l.A = l.B + logu(1e-4, 2);
      l.C = logu(1e-3, 5);
      l.D = l.C + logu(1e-3, 5);
      l.G = logu(1e-3, 1);
      l.H = logu(1e-3, 50);
      const auto cc = char_coeffs(l, logu(1e-3, 1), logu(1e-2, 5));
      const double re = oracle::max_real_part(cc.a1() + cc.a4(), cc.a2() + cc.a5(), cc.a3() + cc.a6());
      if (std::fabs(re) < 1e-9) continue;
      rh = rh && routh_hurwitz_tau0(cc) == (re < 0);
      ++checked;
    }
    sub("Routh-Hurwitz", rh);

    {
      const double tau = 1.0, t_end = 40.0;
      const auto pt = reference_params(tau);
      const auto eq = *positive_equilibrium(pt, tau);
      const auto hist = History::constant(kHistoryFactor * eq.state);
      const auto ref = integrate(pt, hist, t_end, {tau / 1024});
      std::vector<double> errs;
      for (int m : {8, 16, 32}) {
        const auto run = integrate(pt, hist, t_end, {tau / m});
        all_invariants_ok = all_invariants_ok && check_invariants(run, pt).ok();
        double err = 0;
        for (double t = 1.0; t <= t_end; t += 1.0) {
          const auto a = run.interpolate(t), b = ref.interpolate(t);
          for (std::size_t i = 0; i < 3; ++i) err = std::max(err, std::fabs(a[i] - b[i]) / std::fabs(b[i]));
        }
        errs.push_back(err);
      }
      bool order = true;
      for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
        const double slope = std::log2(errs[i] / errs[i + 1]);
        order = order && slope >= kSlopeLo && slope <= kSlopeHi;
      }
      sub("RK4 order", order);
    }

    bool closed = true;
    for (double tau = 0; tau < tm; tau += 0.01) {
      const auto a = *positive_equilibrium(p, tau);
      const auto b = hill_equilibrium_closed_form(p, tau);
      for (std::size_t i = 0; i < 3; ++i)
        closed = closed && std::fabs(a.state[i] - b.state[i]) <= kClosedFormTol * std::fabs(b.state[i]);
    }
    sub("closed-form equilibrium", closed);

    bool mono = true;
    for (double tau = 0; tau < tm; tau += 0.01) {
      const auto ob = omega_branch(p, tau);
      for (std::size_t br = 0; ob && br < ob->size(); ++br) {
        const auto s0 = sn_value(*ob, 0, static_cast<int>(br));
        const auto s1 = sn_value(*ob, 1, static_cast<int>(br));
        const auto s2 = sn_value(*ob, 2, static_cast<int>(br));
        mono = mono && s0 && s1 && s2 && *s0 > *s1 && *s1 > *s2;
      }
    }
    sub("S_n monotone in n", mono);

    sub("trajectory invariants", all_invariants_ok);
  });
  std::string detail = "8 properties";
  if (failed.empty()) {
    detail += ", all hold";
  } else {
    detail += ", failing:";
    for (const auto& f : failed) detail += " [" + f + "]";
  }
  report(7, "property suite", failed.empty(), detail, ms, kPropertyMs);
}

}  // namespace

int main() {
  criterion_tau_max();
  criterion_trivial_limit();
  criterion_root_window();
  criterion_switches();
  criterion_regimes();
  criterion_periods();
  criterion_properties();
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
