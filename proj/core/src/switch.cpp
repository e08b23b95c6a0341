#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hemato/cubic.hpp"
#include "hemato/equilibria.hpp"
#include "hemato/errors.hpp"
#include "hemato/stability_switch.hpp"

namespace hemato {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double sn_tolerance = 1e-10;

int sign_of(double x) { return (x > 0) - (x < 0); }

// Boundary of a predicate between a point where it holds and one where it does not.
template <typename Pred>
double bisect_boundary(double inside, double outside, Pred holds, int iterations = 60) {
  for (int i = 0; i < iterations && inside != outside; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    (holds(mid) ? inside : outside) = mid;
  }
  return inside;
}

bool branch_live(const ModelParams& p, double tau, int branch) {
  const auto ob = omega_branch(p, tau);
  return ob && static_cast<int>(ob->size()) > branch;
}

bool window_live(const ModelParams& p, double tau) {
  const auto eq = positive_equilibrium(p, tau);
  if (!eq) return false;
  const auto cc = char_coeffs(linearize(p, *eq, tau), p.mu, p.k);
  return h_has_positive_roots(cc.b1, cc.b2, cc.b3);
}

struct Refined {
  double tau = 0;
  bool converged = false;
  bool discontinuity = false;
};

// Bisection on S_n over [lo, hi] where S_n(lo) and S_n(hi) differ in sign.
Refined refine_root(const ModelParams& p, int n, int branch, double lo, double hi, double s_lo) {
  Refined out;
  double s_hi_last = 0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto s = sn_value(p, mid, n, branch);
    if (!s) {
      out.tau = mid;
      return out;
    }
    if (std::fabs(*s) < sn_tolerance) {
      out.tau = mid;
      out.converged = true;
      return out;
    }
    if (mid == lo || mid == hi) break;
    if (sign_of(*s) == sign_of(s_lo)) {
      lo = mid;
      s_lo = *s;
    } else {
      hi = mid;
      s_hi_last = *s;
    }
  }
  out.tau = 0.5 * (lo + hi);
  // A jump of theta across 0/2pi shows up as a sign change of O(2 pi / omega).
  out.discontinuity = std::fabs(s_lo - s_hi_last) > 1e-6;
  return out;
}

double sn_slope(const ModelParams& p, double tau, int n, int branch) {
  auto central = [&](double h) -> std::optional<double> {
    const auto up = sn_value(p, tau + h, n, branch);
    const auto dn = sn_value(p, tau - h, n, branch);
    if (up && dn) return (*up - *dn) / (2 * h);
    const auto mid = sn_value(p, tau, n, branch);
    if (!mid) return std::nullopt;
    if (up) return (*up - *mid) / h;
    if (dn) return (*mid - *dn) / h;
    return std::nullopt;
  };
  constexpr double h = 1e-5;
  const auto d1 = central(h);
  const auto d2 = central(h / 2);
  if (d1 && d2) return (4 * *d2 - *d1) / 3;
  return d1 ? *d1 : (d2 ? *d2 : 0.0);
}

SwitchReport make_report(const ModelParams& p, double tau, int n, int branch, bool refined) {
  SwitchReport rep;
  rep.tau_star = tau;
  rep.n = n;
  rep.branch = branch;
  rep.refined = refined;
  const auto ob = omega_branch(p, tau);
  if (!ob || static_cast<int>(ob->size()) <= branch) {
    rep.refined = false;
    return rep;
  }
  rep.omega_star = ob->omega(branch);
  rep.residual = std::abs(char_residual(ob->cc, {0.0, rep.omega_star}, tau));
  rep.dh_dz = h_derivative(ob->cc, ob->roots[branch].z);
  rep.ds_dtau = sn_slope(p, tau, n, branch);
  rep.transversality = sign_of(rep.dh_dz) * sign_of(rep.ds_dtau);
  if (rep.refined && rep.transversality > 0) rep.direction = Direction::destabilizing;
  if (rep.refined && rep.transversality < 0) rep.direction = Direction::stabilizing;
  return rep;
}

}  // namespace

bool h_has_positive_roots(double b1, double b2, double b3) {
  if (b3 < 0) return true;
  const bool cond_i = b2 < 0 || (b1 < 0 && 0 <= b2 && b2 < b1 * b1 / 3);
  if (!cond_i) return false;
  const double delta = b1 * b1 - 3 * b2;
  const double z0 = (-b1 + std::sqrt(delta)) / 3;
  return 2 * delta * z0 + b1 * b2 - 9 * b3 > 0;
}

PositiveRoots positive_roots_h(double b1, double b2, double b3) {
  PositiveRoots out;
  out.criterion = h_has_positive_roots(b1, b2, b3);
  out.discriminant = b1 * b1 - 3 * b2;

  const double scale = std::max({1.0, std::fabs(b1), std::sqrt(std::fabs(b2)), std::cbrt(std::fabs(b3))});
  std::vector<double> all = real_cubic_roots(b1, b2, b3);
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    const double z = *it;
    if (!(z > 0)) continue;
    // A root of b3 == 0 resurfacing as rounding noise above zero.
    if (!out.criterion && z < 1e-12 * scale) continue;
    const double dh = (3 * z + 2 * b1) * z + b2;
    out.roots.push_back({z, sign_of(dh)});
  }
  if (out.criterion != !out.roots.empty()) {
    std::ostringstream os;
    os.precision(17);
    os << "positive_roots_h: existence test and root extraction disagree for b = (" << b1 << ", " << b2 << ", "
       << b3 << ")";
    throw InconsistencyError(os.str());
  }
  return out;
}

PositiveRoots positive_roots_h(const CharCoeffs& cc) { return positive_roots_h(cc.b1, cc.b2, cc.b3); }

ThetaParts theta_parts(const CharCoeffs& cc, double w) {
  const auto [a1, a2, a3, a4, a5, a6] = cc.a;
  const double w2 = w * w;
  const double w4 = w2 * w2;
  ThetaParts t;
  t.cos_num = (a5 - a1 * a4) * w4 + (a1 * a6 + a3 * a4 - a2 * a5) * w2 - a3 * a6;
  t.sin_num = a4 * w4 * w + (a1 * a5 - a2 * a4 - a6) * w2 * w + (a2 * a6 - a3 * a5) * w;
  t.denom = a4 * a4 * w4 + (a5 * a5 - 2 * a4 * a6) * w2 + a6 * a6;
  return t;
}

double theta(const CharCoeffs& cc, double omega) {
  const ThetaParts t = theta_parts(cc, omega);
  if (!(t.denom > 0)) throw DomainError("theta: |Q(i omega)| vanishes");
  double th = std::atan2(t.sin_num, t.cos_num);
  if (th < 0) th += two_pi;
  return th;
}

double OmegaBranch::omega(std::size_t branch) const { return std::sqrt(roots.at(branch).z); }

std::optional<OmegaBranch> omega_branch(const ModelParams& p, double tau) {
  const auto eq = positive_equilibrium(p, tau);
  if (!eq) return std::nullopt;
  OmegaBranch ob;
  ob.tau = tau;
  ob.cc = char_coeffs(linearize(p, *eq, tau), p.mu, p.k);
  ob.roots = positive_roots_h(ob.cc).roots;
  return ob;
}

std::optional<double> sn_value(const OmegaBranch& ob, int n, int branch) {
  if (branch < 0 || static_cast<std::size_t>(branch) >= ob.size()) return std::nullopt;
  const double w = ob.omega(branch);
  return ob.tau - (theta(ob.cc, w) + two_pi * n) / w;
}

std::optional<double> sn_value(const ModelParams& p, double tau, int n, int branch) {
  const auto ob = omega_branch(p, tau);
  if (!ob) return std::nullopt;
  return sn_value(*ob, n, branch);
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::destabilizing: return "destabilizing";
    case Direction::stabilizing: return "stabilizing";
    case Direction::unclassified: return "unclassified";
  }
  return "?";
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::unknown: return "unknown";
  }
  return "?";
}

std::vector<double> make_tau_grid(double upper, double step) {
  if (!(step > 0)) throw DomainError("make_tau_grid: step must be > 0");
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double t = static_cast<double>(i) * step;
    if (!(t < upper)) break;
    grid.push_back(t);
  }
  return grid;
}

ScanResult scan(const ModelParams& p, std::span<const double> tau_grid, int n_max) {
  const auto bound = tau_max(p);
  if (!bound) throw DomainError("scan: no positive equilibrium for any delay");
  if (n_max < 0) throw DomainError("scan: n_max must be >= 0");

  ScanResult res;
  res.tau_max = *bound;

  std::vector<double> grid;
  for (double t : tau_grid)
    if (t >= 0 && t < *bound) grid.push_back(t);
  std::sort(grid.begin(), grid.end());

  // Grid points are independent of one another.
  std::vector<std::optional<OmegaBranch>> points(grid.size());
  std::size_t max_branches = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    points[i] = omega_branch(p, grid[i]);
    if (points[i]) max_branches = std::max(max_branches, points[i]->size());
  }
  auto live = [&](std::size_t i) { return points[i] && points[i]->size() > 0; };

  // Root-existence windows with bisected edges.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!live(i)) continue;
    Interval w;
    w.lo = i == 0 ? grid[0]
                  : bisect_boundary(grid[i], grid[i - 1], [&](double t) { return window_live(p, t); });
    std::size_t j = i;
    while (j + 1 < grid.size() && live(j + 1)) ++j;
    w.hi = j + 1 == grid.size() ? *bound
                                : bisect_boundary(grid[j], grid[j + 1], [&](double t) { return window_live(p, t); });
    res.root_windows.push_back(w);
    i = j;
  }

  for (int n = 0; n <= n_max; ++n) {
    for (int b = 0; b < static_cast<int>(max_branches); ++b) {
      SnCurve curve;
      curve.n = n;
      curve.branch = b;
      std::vector<std::optional<double>> vals(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (points[i]) vals[i] = sn_value(*points[i], n, b);
        if (vals[i]) curve.samples.push_back({grid[i], *vals[i]});
      }

      auto add_root = [&](double tau, bool refined) {
        curve.roots.push_back(tau);
        res.reports.push_back(make_report(p, tau, n, b, refined));
      };
      auto try_bracket = [&](double lo, double hi, double s_lo, double s_hi) {
        if (s_lo == 0.0) {
          if (lo > 0) add_root(lo, true);
          return;
        }
        if (sign_of(s_lo) == sign_of(s_hi) || s_hi == 0.0) return;
        const Refined r = refine_root(p, n, b, lo, hi, s_lo);
        if (r.discontinuity) return;
        add_root(r.tau, r.converged);
      };

      for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const auto& s0 = vals[i];
        const auto& s1 = vals[i + 1];
        if (s0 && s1) {
          try_bracket(grid[i], grid[i + 1], *s0, *s1);
        } else if (s0 && !s1) {
          const double edge = bisect_boundary(grid[i], grid[i + 1], [&](double t) { return branch_live(p, t, b); });
          if (const auto se = sn_value(p, edge, n, b)) try_bracket(grid[i], edge, *s0, *se);
        } else if (!s0 && s1) {
          const double edge = bisect_boundary(grid[i + 1], grid[i], [&](double t) { return branch_live(p, t, b); });
          if (const auto se = sn_value(p, edge, n, b)) try_bracket(edge, grid[i + 1], *se, *s1);
        }
      }
      if (!vals.empty() && vals.back() && *vals.back() == 0.0) add_root(grid.back(), true);
      res.curves.push_back(std::move(curve));
    }
  }

  std::sort(res.reports.begin(), res.reports.end(),
            [](const SwitchReport& x, const SwitchReport& y) { return x.tau_star < y.tau_star; });
  // Coincident crossings on different curves (codimension two) stay unclassified.
  for (std::size_t i = 0; i + 1 < res.reports.size(); ++i) {
    auto& x = res.reports[i];
    auto& y = res.reports[i + 1];
    if (std::fabs(x.tau_star - y.tau_star) < 1e-8 * std::max(1.0, x.tau_star)) {
      x.direction = Direction::unclassified;
      y.direction = Direction::unclassified;
    }
  }

  const auto eq0 = positive_equilibrium(p, 0.0);
  res.stable_at_zero = eq0 && routh_hurwitz_tau0(char_coeffs(linearize(p, *eq0, 0.0), p.mu, p.k));

  // Count of characteristic roots in the right half-plane. Exact when seeded
  // stable; otherwise only known to be positive.
  bool exact = res.stable_at_zero;
  int unstable_pairs = res.stable_at_zero ? 0 : 1;
  auto current = [&]() {
    if (exact) return unstable_pairs == 0 ? Stability::stable : Stability::unstable;
    return unstable_pairs > 0 ? Stability::unstable : Stability::unknown;
  };
  double lo = 0.0;
  for (const auto& rep : res.reports) {
    if (rep.tau_star > lo) res.partition.push_back({lo, rep.tau_star, current()});
    lo = rep.tau_star;
    switch (rep.direction) {
      case Direction::destabilizing: ++unstable_pairs; break;
      case Direction::stabilizing: unstable_pairs = std::max(0, unstable_pairs - 1); break;
      case Direction::unclassified:
        exact = false;
        unstable_pairs = 0;
        break;
    }
  }
  res.partition.push_back({lo, *bound, current()});
  return res;
}

}  // namespace hemato
