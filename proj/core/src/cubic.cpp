#include "hemato/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hemato {
namespace {

double polish(double z, double b1, double b2, double b3) {
  const double h = ((z + b1) * z + b2) * z + b3;
  const double dh = (3 * z + 2 * b1) * z + b2;
  if (dh == 0.0) return z;
  const double next = z - h / dh;
  return std::isfinite(next) ? next : z;
}

}  // namespace

std::vector<double> real_cubic_roots(double b1, double b2, double b3) {
  // z = y - b1/3 turns the cubic into y^3 + p y + q.
  const double shift = b1 / 3.0;
  const double p = b2 - b1 * shift;
  const double q = (2.0 * shift * shift - b2) * shift + b3;

  std::vector<double> ys;
  if (p == 0.0 && q == 0.0) {
    ys = {0.0};
  } else {
    const double disc = 0.25 * q * q + p * p * p / 27.0;
    if (disc > 0.0) {
      // Single real root; pick the cube root without cancellation.
      const double u = -std::copysign(std::cbrt(0.5 * std::fabs(q) + std::sqrt(disc)), q);
      ys = {u == 0.0 ? 0.0 : u - p / (3.0 * u)};
    } else {
      const double r = 2.0 * std::sqrt(-p / 3.0);
      const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
      const double phi = std::acos(arg) / 3.0;
      constexpr double third = 2.0 * std::numbers::pi / 3.0;
      ys = {r * std::cos(phi), r * std::cos(phi - third), r * std::cos(phi - 2.0 * third)};
    }
  }

  std::vector<double> roots;
  roots.reserve(ys.size());
  for (double y : ys) roots.push_back(polish(y - shift, b1, b2, b3));
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace hemato
