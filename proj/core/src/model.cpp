#include "hemato/model.hpp"

#include <cmath>
#include <memory>

#include "hemato/errors.hpp"

namespace hemato {

ModelParams reference_params(double tau) {
  ModelParams p;
  p.delta = 0.01;
  p.gamma = 0.2;
  p.tau = tau;
  p.mu = 0.02;
  p.k = 2.8;
  p.rates = std::make_shared<HillRates>(HillRates::Params{0.5, 0.04, 6570.0, 0.0382, 7.0});
  return p;
}

double division_factor(const ModelParams& p, double tau) { return 2.0 * std::exp(-p.gamma * tau); }

double net_amplification(const ModelParams& p, double tau) { return division_factor(p, tau) - 1.0; }

SystemState rhs(const SystemState& now, const SystemState& delayed, const ModelParams& p) {
  if (!now.is_finite() || !delayed.is_finite()) throw InvalidStateError("rhs: non-finite state");
  const RateFunctions& r = p.r();
  const double outflow = (p.delta + r.beta(now.q, now.e)) * now.q + r.g(now.q);
  const double inflow = division_factor(p, p.tau) * r.beta(delayed.q, delayed.e) * delayed.q;
  return {inflow - outflow, -p.mu * now.m + r.g(now.q), -p.k * now.e + r.f(now.m)};
}

std::vector<Violation> validate(const ModelParams& p) {
  std::vector<Violation> out;
  auto check = [&out](bool ok, const char* field, const char* msg) {
    if (!ok) out.push_back({field, msg});
  };
  check(std::isfinite(p.mu) && p.mu > 0.0, "mu", "mu must be finite and > 0");
  check(std::isfinite(p.k) && p.k > 0.0, "k", "k must be finite and > 0");
  check(std::isfinite(p.delta) && p.delta >= 0.0, "delta", "delta must be finite and >= 0");
  check(std::isfinite(p.gamma) && p.gamma >= 0.0, "gamma", "gamma must be finite and >= 0");
  check(std::isfinite(p.tau) && p.tau >= 0.0, "tau", "tau must be finite and >= 0");
  if (!p.rates) {
    out.push_back({"rates", "no rate functions supplied"});
  } else {
    for (auto& v : p.rates->validate()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace hemato
