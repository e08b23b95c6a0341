#pragma once

// Independent reference computations used by unit and acceptance tests.
// Nothing here calls into the library routine it is meant to check.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <random>
#include <vector>

#include "hemato/model.hpp"
#include "hemato/rates.hpp"

namespace hemato::oracle {

/// Roots of z^3 + c2 z^2 + c1 z + c0 as eigenvalues of the companion matrix.
inline std::vector<std::complex<double>> companion_roots(double c2, double c1, double c0) {
  Eigen::Matrix3d m;
  m << -c2, -c1, -c0, 1, 0, 0, 0, 1, 0;
  Eigen::EigenSolver<Eigen::Matrix3d> es(m, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < 3; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

inline double max_real_part(double c2, double c1, double c0) {
  double best = -INFINITY;
  for (auto z : companion_roots(c2, c1, c0)) best = std::max(best, z.real());
  return best;
}

/// Positive real roots, descending, with imaginary parts below `imag_tol`.
inline std::vector<double> positive_real_roots(double b1, double b2, double b3, double imag_tol = 1e-7) {
  std::vector<double> out;
  for (auto z : companion_roots(b1, b2, b3)) {
    const double scale = std::max(1.0, std::abs(z));
    if (std::fabs(z.imag()) <= imag_tol * scale && z.real() > 0) out.push_back(z.real());
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

/// Hill-rate right-hand side written out longhand.
inline std::array<double, 3> hill_rhs_longhand(double delta, double gamma, double tau, double mu, double k,
                                               const HillRates::Params& h, std::array<double, 3> now,
                                               std::array<double, 3> lag) {
  auto beta = [&](double e) { return h.beta0 * e / (1 + e); };
  const double dq = -delta * now[0] - h.G * now[0] - beta(now[2]) * now[0] +
                    2 * std::exp(-gamma * tau) * beta(lag[2]) * lag[0];
  const double dm = -mu * now[1] + h.G * now[0];
  const double de = -k * now[2] + h.a / (1 + h.K * std::pow(now[1], h.r));
  return {dq, dm, de};
}

/// Central-difference Jacobian of rhs with respect to the current (delayed == false)
/// or the delayed (delayed == true) argument.
inline Eigen::Matrix3d rhs_jacobian(const ModelParams& p, const SystemState& x, bool delayed, double rel_step = 1e-6) {
  Eigen::Matrix3d jac;
  for (std::size_t j = 0; j < 3; ++j) {
    const double h = rel_step * std::max(1.0, std::fabs(x[j]));
    SystemState up = x, dn = x;
    up[j] += h;
    dn[j] -= h;
    const SystemState fu = delayed ? rhs(x, up, p) : rhs(up, x, p);
    const SystemState fd = delayed ? rhs(x, dn, p) : rhs(dn, x, p);
    for (std::size_t i = 0; i < 3; ++i) jac(static_cast<int>(i), static_cast<int>(j)) = (fu[i] - fd[i]) / (2 * h);
  }
  return jac;
}

inline double central_difference(auto&& fn, double x, double h) { return (fn(x + h) - fn(x - h)) / (2 * h); }

/// Random Hill parameter set around the reference values. Existence of the
/// positive equilibrium is not guaranteed.
inline ModelParams random_hill_params(std::mt19937_64& rng) {
  auto logu = [&rng](double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
  };
  ModelParams p;
  p.delta = logu(1e-3, 0.1);
  p.gamma = logu(0.02, 1.0);
  p.mu = logu(5e-3, 0.2);
  p.k = logu(0.5, 10.0);
  HillRates::Params h;
  h.beta0 = logu(0.1, 2.0);
  h.G = logu(5e-3, 0.2);
  h.a = logu(10.0, 1e4);
  h.K = logu(1e-3, 1.0);
  h.r = 1.0 + logu(0.1, 10.0);
  p.rates = std::make_shared<HillRates>(h);
  return p;
}

}  // namespace hemato::oracle
