#include "hemato/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hemato/errors.hpp"

namespace hemato {
namespace {

void cross_check(const char* name, double from_a, double expanded, double scale) {
  if (std::fabs(from_a - expanded) > 1e-9 * std::max(scale, 1e-300)) {
    std::ostringstream os;
    os.precision(17);
    os << "char_coeffs: " << name << " mismatch (" << from_a << " vs " << expanded << ")";
    throw InconsistencyError(os.str());
  }
}

}  // namespace

LinCoeffs linearize(const ModelParams& p, const Equilibrium& eq, double tau) {
  const RateFunctions& r = p.r();
  const double q = eq.state.q;
  const double e = eq.state.e;
  const double twice_survival = division_factor(p, tau);
  const double flux = r.beta(q, e) + r.beta_dq(q, e) * q;
  LinCoeffs c;
  c.A = p.delta + r.g_prime(q) + flux;
  c.B = twice_survival * flux;
  c.C = r.beta_de(q, e) * q;
  c.D = twice_survival * c.C;
  c.G = r.g_prime(q);
  c.H = -r.f_prime(eq.state.m);
  return c;
}

CharCoeffs char_coeffs(const LinCoeffs& c, double mu, double k) {
  const auto [A, B, C, D, G, H] = c;
  CharCoeffs cc;
  cc.lin = c;
  cc.mu = mu;
  cc.k = k;
  const double GH = G * H;
  const double muk = mu * k;
  const double sum = mu + k;
  cc.a = {sum + A, muk + A * sum, muk * A - GH * C, -B, -B * sum, -B * muk + GH * D};
  const auto [a1, a2, a3, a4, a5, a6] = cc.a;

  cc.b1 = a1 * a1 - 2 * a2 - a4 * a4;
  cc.b2 = a2 * a2 + 2 * a4 * a6 - 2 * a1 * a3 - a5 * a5;
  cc.b3 = a3 * a3 - a6 * a6;

  const double AB = A * A - B * B;
  const double mk2 = muk * muk;
  const double s2 = mu * mu + k * k;
  const double b1x = s2 + AB;
  const double b2x = mk2 + AB * s2 + 2 * GH * (C * (sum + A) - B * D);
  const double b3x = mk2 * AB + GH * GH * (C * C - D * D) + 2 * muk * GH * (B * D - A * C);

  cross_check("b1", cc.b1, b1x, a1 * a1 + 2 * std::fabs(a2) + a4 * a4);
  cross_check("b2", cc.b2, b2x,
              a2 * a2 + 2 * std::fabs(a4 * a6) + 2 * std::fabs(a1 * a3) + a5 * a5);
  cross_check("b3", cc.b3, b3x, a3 * a3 + a6 * a6);
  return cc;
}

std::complex<double> eval_p(const CharCoeffs& cc, std::complex<double> l) {
  return ((l + cc.a1()) * l + cc.a2()) * l + cc.a3();
}

std::complex<double> eval_q(const CharCoeffs& cc, std::complex<double> l) {
  return (cc.a4() * l + cc.a5()) * l + cc.a6();
}

std::complex<double> char_residual(const CharCoeffs& cc, std::complex<double> lambda, double tau) {
  return eval_p(cc, lambda) + eval_q(cc, lambda) * std::exp(-lambda * tau);
}

double h_value(const CharCoeffs& cc, double z) { return ((z + cc.b1) * z + cc.b2) * z + cc.b3; }

double h_derivative(const CharCoeffs& cc, double z) { return (3 * z + 2 * cc.b1) * z + cc.b2; }

bool routh_hurwitz_cubic(double c2, double c1, double c0) { return c2 > 0 && c0 > 0 && c2 * c1 > c0; }

bool routh_hurwitz_tau0(const CharCoeffs& cc) {
  const double c2 = cc.a1() + cc.a4();
  const double c1 = cc.a2() + cc.a5();
  const double c0 = cc.a3() + cc.a6();
  const bool from_a = routh_hurwitz_cubic(c2, c1, c0);

  const auto& l = cc.lin;
  const double sum = cc.mu + cc.k;
  const double amb = l.A - l.B;
  const double lhs = sum * (cc.mu * cc.k + amb * (sum + amb));
  const double rhs = l.G * l.H * (l.D - l.C);
  const double margin_a = c2 * c1 - c0;
  const double margin_lin = lhs - rhs;
  const double scale = std::fabs(c2 * c1) + std::fabs(c0) + std::fabs(lhs) + std::fabs(rhs);
  if (std::fabs(margin_a - margin_lin) > 1e-9 * std::max(scale, 1e-300))
    throw InconsistencyError("routh_hurwitz_tau0: the two criterion forms disagree");
  return from_a;
}

const char* to_string(TrivialVerdict v) {
  switch (v) {
    case TrivialVerdict::stable: return "stable";
    case TrivialVerdict::unstable: return "unstable";
    case TrivialVerdict::boundary: return "boundary";
  }
  return "?";
}

TrivialVerdict trivial_stability(const ModelParams& p, double tau) {
  const RateFunctions& r = p.r();
  const double loss = p.delta + r.g_prime(0.0);
  const double gain = net_amplification(p, tau) * r.beta(0.0, r.f(0.0) / p.k);
  if (loss > gain) return TrivialVerdict::stable;
  if (loss < gain) return TrivialVerdict::unstable;
  return TrivialVerdict::boundary;
}

double hayes_zeta(double a) {
  constexpr double pi = std::numbers::pi;
  if (!(a > -1.0)) throw DomainError("hayes_zeta: requires a > -1");
  if (a == 0.0) return pi / 2;
  // zeta + a tan(zeta) changes sign once on (pi/2, pi) for a > 0; for
  // -1 < a < 0 the root sits in (0, pi/2) where zeta cos + a sin is used.
  double lo, hi;
  auto fn = [a](double z) { return a > 0 ? z + a * std::tan(z) : z * std::cos(z) + a * std::sin(z); };
  if (a > 0) {
    lo = pi / 2 + 1e-15;
    hi = pi;
  } else {
    lo = 1e-12;
    hi = pi / 2;
  }
  double flo = fn(lo);
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool hayes_check(double A, double B, double tau) {
  if (!(tau > 0)) throw DomainError("hayes_check: requires tau > 0");
  // (nu + a) e^nu + b = 0 with nu = lambda tau, a = A tau, b = -B tau.
  const double a = A * tau;
  const double b = -B * tau;
  if (!(a > -1.0)) return false;
  if (!(a + b > 0.0)) return false;
  const double z = hayes_zeta(a);
  return b < z * std::sin(z) - a * std::cos(z);
}

}  // namespace hemato
