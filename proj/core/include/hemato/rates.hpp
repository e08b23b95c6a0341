#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hemato {

/// A structural assumption of the model that a parameter set fails.
struct Violation {
  std::string field;
  std::string message;
};

/// Reintroduction rate beta(Q, E), differentiation flux g(Q) and growth-factor
/// feedback f(M), each with its analytic first derivatives.
///
/// Instances are expected to satisfy: g(0) = 0 with Q -> g(Q)/Q nondecreasing,
/// f positive and decreasing, beta increasing in E with beta(Q, 0) = 0 and
/// nonincreasing in Q. The analysis routines rely on these but do not re-check
/// them on every call.
class RateFunctions {
 public:
  virtual ~RateFunctions() = default;

  virtual double beta(double q, double e) const = 0;
  virtual double beta_dq(double q, double e) const = 0;
  virtual double beta_de(double q, double e) const = 0;

  virtual double g(double q) const = 0;
  virtual double g_prime(double q) const = 0;

  virtual double f(double m) const = 0;
  virtual double f_prime(double m) const = 0;

  /// Config section name of this family, e.g. "hill".
  virtual std::string_view family() const = 0;

  /// Family-specific parameter checks.
  virtual std::vector<Violation> validate() const { return {}; }
};

/// beta(E) = beta0 E / (1 + E), g(Q) = G Q, f(M) = a / (1 + K M^r).
class HillRates final : public RateFunctions {
 public:
  struct Params {
    double beta0 = 0.5;
    double G = 0.04;
    double a = 6570.0;
    double K = 0.0382;
    double r = 7.0;
  };

  HillRates() = default;
  explicit HillRates(const Params& params) : p_(params) {}

  const Params& params() const { return p_; }

  double beta(double q, double e) const override;
  double beta_dq(double q, double e) const override;
  double beta_de(double q, double e) const override;
  double g(double q) const override;
  double g_prime(double q) const override;
  double f(double m) const override;
  double f_prime(double m) const override;

  std::string_view family() const override { return "hill"; }
  std::vector<Violation> validate() const override;

 private:
  Params p_;
};

using RatesPtr = std::shared_ptr<const RateFunctions>;

}  // namespace hemato
