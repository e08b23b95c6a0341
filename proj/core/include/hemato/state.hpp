#pragma once

#include <cmath>
#include <cstddef>

namespace hemato {

/// Quiescent stem cells, circulating mature cells and growth-factor concentration.
struct SystemState {
  double q = 0.0;
  double m = 0.0;
  double e = 0.0;

  double operator[](std::size_t i) const { return i == 0 ? q : (i == 1 ? m : e); }
  double& operator[](std::size_t i) { return i == 0 ? q : (i == 1 ? m : e); }

  bool is_finite() const { return std::isfinite(q) && std::isfinite(m) && std::isfinite(e); }
  double min_component() const { return std::fmin(q, std::fmin(m, e)); }
  double max_abs() const { return std::fmax(std::fabs(q), std::fmax(std::fabs(m), std::fabs(e))); }

  SystemState& operator+=(const SystemState& o) {
    q += o.q;
    m += o.m;
    e += o.e;
    return *this;
  }
  SystemState& operator-=(const SystemState& o) {
    q -= o.q;
    m -= o.m;
    e -= o.e;
    return *this;
  }
  SystemState& operator*=(double s) {
    q *= s;
    m *= s;
    e *= s;
    return *this;
  }

  friend SystemState operator+(SystemState a, const SystemState& b) { return a += b; }
  friend SystemState operator-(SystemState a, const SystemState& b) { return a -= b; }
  friend SystemState operator*(double s, SystemState a) { return a *= s; }
  friend SystemState operator*(SystemState a, double s) { return a *= s; }
  friend bool operator==(const SystemState&, const SystemState&) = default;
};

/// Component selector used by trajectory post-processing.
enum class Component { q = 0, m = 1, e = 2 };

}  // namespace hemato
