#include "hemato/equilibria.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hemato/errors.hpp"

namespace hemato {
namespace {

// beta(0, f(0)/k): reintroduction rate at the trivial equilibrium.
double beta_at_extinction(const ModelParams& p) {
  const RateFunctions& r = p.r();
  return r.beta(0.0, r.f(0.0) / p.k);
}

struct Residual {
  double value;
  double slope;
};

Residual residual_with_slope(const ModelParams& p, double q, double tau) {
  const RateFunctions& r = p.r();
  const double alpha = net_amplification(p, tau);
  const double m = r.g(q) / p.mu;
  const double e = r.f(m) / p.k;
  const double gq = r.g(q);
  const double gp = r.g_prime(q);
  const double beta_tilde = r.beta(q, e);
  const double beta_tilde_prime = r.beta_dq(q, e) + r.beta_de(q, e) * r.f_prime(m) * gp / (p.k * p.mu);
  return {alpha * beta_tilde - p.delta - gq / q, alpha * beta_tilde_prime - (gp * q - gq) / (q * q)};
}

}  // namespace

const char* to_string(EquilibriumKind kind) { return kind == EquilibriumKind::trivial ? "trivial" : "positive"; }

std::optional<double> tau_max(const ModelParams& p) {
  const double b0 = beta_at_extinction(p);
  const double loss = p.delta + p.r().g_prime(0.0);
  if (!(loss < b0)) return std::nullopt;
  if (p.gamma == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(2.0 * b0 / (loss + b0)) / p.gamma;
}

bool positive_equilibrium_exists(const ModelParams& p, double tau) {
  return p.delta + p.r().g_prime(0.0) < net_amplification(p, tau) * beta_at_extinction(p);
}

Equilibrium trivial_equilibrium(const ModelParams& p, double tau) {
  return {EquilibriumKind::trivial, {0.0, 0.0, p.r().f(0.0) / p.k}, tau};
}

double equilibrium_residual(const ModelParams& p, double q, double tau) {
  return residual_with_slope(p, q, tau).value;
}

std::optional<Equilibrium> positive_equilibrium(const ModelParams& p, double tau) {
  const auto bound = tau_max(p);
  if (!bound || tau >= *bound || !positive_equilibrium_exists(p, tau)) return std::nullopt;

  const double tol = 1e-12 * (p.delta + p.r().g_prime(0.0) + 1.0);
  double lo = 1e-12;
  // Root lies below the resolution of the bracket; existence is marginal.
  if (equilibrium_residual(p, lo, tau) <= 0.0) return std::nullopt;

  double hi = 1.0;
  int doublings = 0;
  while (equilibrium_residual(p, hi, tau) >= 0.0) {
    hi *= 2.0;
    if (++doublings > 1100 || !std::isfinite(hi))
      throw NumericalFailure("positive_equilibrium: could not bracket the root");
  }

  // Coarse bisection, then Newton steps kept inside the bracket.
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    (equilibrium_residual(p, mid, tau) > 0.0 ? lo : hi) = mid;
  }
  double q = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const Residual r = residual_with_slope(p, q, tau);
    if (std::fabs(r.value) < tol) break;
    (r.value > 0.0 ? lo : hi) = q;
    double next = q - r.value / r.slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == q) break;
    q = next;
  }
  if (std::fabs(equilibrium_residual(p, q, tau)) >= tol && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi)
    throw NumericalFailure("positive_equilibrium: residual tolerance not reached");

  const RateFunctions& r = p.r();
  const double m = r.g(q) / p.mu;
  return Equilibrium{EquilibriumKind::positive, {q, m, r.f(m) / p.k}, tau};
}

Equilibrium hill_equilibrium_closed_form(const ModelParams& p, double tau) {
  const auto* hill = dynamic_cast<const HillRates*>(p.rates.get());
  if (!hill) throw std::invalid_argument("hill_equilibrium_closed_form: rates are not HillRates");
  const auto bound = tau_max(p);
  if (!bound || tau >= *bound || tau < 0.0) throw DomainError("hill_equilibrium_closed_form: tau outside [0, tau_max)");

  const auto& h = hill->params();
  const double alpha = net_amplification(p, tau);
  const double loss = p.delta + h.G;
  const double base = (h.a * h.beta0 * alpha - loss * (h.a + p.k)) / (p.k * loss);
  const double q = (p.mu / h.G) * std::pow(h.K, -1.0 / h.r) * std::pow(base, 1.0 / h.r);
  const double m = (h.G / p.mu) * q;
  const double e = loss / (h.beta0 * alpha - loss);
  return {EquilibriumKind::positive, {q, m, e}, tau};
}

}  // namespace hemato
