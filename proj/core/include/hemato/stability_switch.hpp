#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hemato/linearization.hpp"
#include "hemato/model.hpp"

namespace hemato {

/// A positive root z of h together with the sign of dh/dz there.
struct HRoot {
  double z = 0;
  int dh_sign = 0;
};

struct PositiveRoots {
  bool criterion = false;  ///< root-existence test on b1..b3 alone
  double discriminant = 0;  ///< b1^2 - 3 b2
  std::vector<HRoot> roots;  ///< descending in z
};

/// Existence test for positive roots of h: b3 < 0, or b3 >= 0 together with
/// (b2 < 0 or b1 < 0 <= b2 < b1^2/3) and 2 Delta z0 + b1 b2 - 9 b3 > 0.
bool h_has_positive_roots(double b1, double b2, double b3);

/// Positive roots of h, cross-checked against the existence test.
/// Throws InconsistencyError when they disagree.
PositiveRoots positive_roots_h(double b1, double b2, double b3);
PositiveRoots positive_roots_h(const CharCoeffs& cc);

/// Numerators and common denominator |Q(i omega)|^2 of cos(theta), sin(theta).
struct ThetaParts {
  double cos_num = 0;
  double sin_num = 0;
  double denom = 0;
};

ThetaParts theta_parts(const CharCoeffs& cc, double omega);

/// Angle in [0, 2 pi) with cos/sin given by theta_parts.
/// Throws DomainError when |Q(i omega)| vanishes.
double theta(const CharCoeffs& cc, double omega);

/// Everything the crossing test needs at one delay.
struct OmegaBranch {
  double tau = 0;
  CharCoeffs cc;
  std::vector<HRoot> roots;  ///< descending z, so branch 0 carries the largest omega

  std::size_t size() const { return roots.size(); }
  double omega(std::size_t branch) const;
};

/// nullopt when there is no positive equilibrium at `tau`.
std::optional<OmegaBranch> omega_branch(const ModelParams& p, double tau);

/// S_n(tau) = tau - (theta + 2 n pi) / omega on the given branch; nullopt
/// outside the root window or when the branch does not exist at `tau`.
std::optional<double> sn_value(const ModelParams& p, double tau, int n, int branch);
std::optional<double> sn_value(const OmegaBranch& ob, int n, int branch);

struct SnSample {
  double tau = 0;
  double value = 0;
};

struct SnCurve {
  int n = 0;
  int branch = 0;
  std::vector<SnSample> samples;
  std::vector<double> roots;
};

enum class Direction { destabilizing, stabilizing, unclassified };
const char* to_string(Direction d);

struct SwitchReport {
  double tau_star = 0;
  double omega_star = 0;
  int n = 0;
  int branch = 0;
  int transversality = 0;  ///< sign of d Re(lambda)/d tau
  Direction direction = Direction::unclassified;
  double residual = 0;  ///< |P(i w) + Q(i w) e^{-i w tau}| at the crossing
  double dh_dz = 0;
  double ds_dtau = 0;
  bool refined = true;
};

enum class Stability { stable, unstable, unknown };
const char* to_string(Stability s);

struct StabilityInterval {
  double lo = 0;
  double hi = 0;
  Stability stability = Stability::unknown;
};

struct Interval {
  double lo = 0;
  double hi = 0;
};

struct ScanResult {
  double tau_max = 0;
  bool stable_at_zero = false;
  std::vector<Interval> root_windows;  ///< where h has positive roots
  std::vector<SnCurve> curves;
  std::vector<SwitchReport> reports;  ///< ascending in tau_star
  std::vector<StabilityInterval> partition;  ///< covers [0, tau_max)
};

/// Uniform grid on [0, upper) with the given spacing.
std::vector<double> make_tau_grid(double upper, double step);

/// Samples every S_n (n <= n_max) on every live branch, refines sign changes
/// to |S_n| < 1e-10, classifies each crossing and assembles the stability
/// partition of [0, tau_max). Requires a positive equilibrium to exist.
ScanResult scan(const ModelParams& p, std::span<const double> tau_grid, int n_max);

}  // namespace hemato
