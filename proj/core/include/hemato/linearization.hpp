#pragma once

#include <array>
#include <complex>

#include "hemato/equilibria.hpp"
#include "hemato/model.hpp"

namespace hemato {

/// Coefficients of the linearised system
///   q' = -A q + B q(t-tau) - C e + D e(t-tau),  m' = -mu m + G q,  e' = -k e - H m.
struct LinCoeffs {
  double A = 0, B = 0, C = 0, D = 0, G = 0, H = 0;
};

/// Characteristic equation P(l) + Q(l) e^{-l tau} = 0 with
///   P(l) = l^3 + a1 l^2 + a2 l + a3,   Q(l) = a4 l^2 + a5 l + a6,
/// and h(z) = z^3 + b1 z^2 + b2 z + b3 = |P(i sqrt z)|^2 - |Q(i sqrt z)|^2.
struct CharCoeffs {
  std::array<double, 6> a{};  ///< a[0] = a1 ... a[5] = a6
  double b1 = 0, b2 = 0, b3 = 0;
  LinCoeffs lin;
  double mu = 0, k = 0;

  double a1() const { return a[0]; }
  double a2() const { return a[1]; }
  double a3() const { return a[2]; }
  double a4() const { return a[3]; }
  double a5() const { return a[4]; }
  double a6() const { return a[5]; }
};

LinCoeffs linearize(const ModelParams& p, const Equilibrium& eq, double tau);

/// Builds a1..a6 and b1..b3. b2 and b3 are evaluated both from the a's and
/// from their expansion in A..H; disagreement beyond 1e-9 (relative to the
/// size of the summed terms) raises InconsistencyError.
CharCoeffs char_coeffs(const LinCoeffs& c, double mu, double k);

std::complex<double> eval_p(const CharCoeffs& cc, std::complex<double> lambda);
std::complex<double> eval_q(const CharCoeffs& cc, std::complex<double> lambda);

/// P(lambda) + Q(lambda) e^{-lambda tau}.
std::complex<double> char_residual(const CharCoeffs& cc, std::complex<double> lambda, double tau);

double h_value(const CharCoeffs& cc, double z);
double h_derivative(const CharCoeffs& cc, double z);

/// Routh-Hurwitz test for l^3 + c2 l^2 + c1 l + c0.
bool routh_hurwitz_cubic(double c2, double c1, double c0);

/// Delay-free stability of the positive equilibrium. Both the a-coefficient
/// and the A..H forms of the criterion are evaluated; their margins must agree.
bool routh_hurwitz_tau0(const CharCoeffs& cc);

enum class TrivialVerdict { stable, unstable, boundary };

const char* to_string(TrivialVerdict v);

/// Stability of (0, 0, f(0)/k): stable iff delta + g'(0) exceeds
/// (2e^{-gamma tau} - 1) beta(0, f(0)/k), unstable if below, boundary at equality.
TrivialVerdict trivial_stability(const ModelParams& p, double tau);

/// Unique zeta in (0, pi) with zeta = -a tan(zeta), for a > -1.
double hayes_zeta(double a);

/// Hayes' conditions for lambda + A - B e^{-lambda tau} = 0: true iff every
/// root has negative real part. Requires tau > 0.
bool hayes_check(double A, double B, double tau);

}  // namespace hemato
