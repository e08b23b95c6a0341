#include "hemato/rates.hpp"

#include <algorithm>
#include <cmath>

namespace hemato {

double HillRates::beta(double /*q*/, double e) const { return p_.beta0 * e / (1.0 + e); }

double HillRates::beta_dq(double /*q*/, double /*e*/) const { return 0.0; }

double HillRates::beta_de(double /*q*/, double e) const {
  const double s = 1.0 + e;
  return p_.beta0 / (s * s);
}

double HillRates::g(double q) const { return p_.G * q; }

double HillRates::g_prime(double /*q*/) const { return p_.G; }

// f is only meaningful for M >= 0; negative arguments (RK stages) are clamped.
double HillRates::f(double m) const {
  const double mm = std::max(m, 0.0);
  return p_.a / (1.0 + p_.K * std::pow(mm, p_.r));
}

double HillRates::f_prime(double m) const {
  const double mm = std::max(m, 0.0);
  const double s = 1.0 + p_.K * std::pow(mm, p_.r);
  return -p_.a * p_.K * p_.r * std::pow(mm, p_.r - 1.0) / (s * s);
}

std::vector<Violation> HillRates::validate() const {
  std::vector<Violation> out;
  auto positive = [&out](const char* name, double v) {
    if (!(std::isfinite(v) && v > 0.0)) out.push_back({name, std::string(name) + " must be finite and > 0"});
  };
  positive("beta0", p_.beta0);
  positive("G", p_.G);
  positive("a", p_.a);
  positive("K", p_.K);
  if (!(std::isfinite(p_.r) && p_.r > 1.0)) out.push_back({"r", "r must be finite and > 1"});
  return out;
}

}  // namespace hemato
