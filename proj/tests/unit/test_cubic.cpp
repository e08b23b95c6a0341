#include <doctest.h>

#include <cmath>
#include <random>

#include "hemato/cubic.hpp"
#include "support/oracles.hpp"

using namespace hemato;

TEST_CASE("simple cubics") {
  const auto r = real_cubic_roots(0, 0, -8);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(2.0).epsilon(1e-14));

  const auto three = real_cubic_roots(-6, 11, -6);
  REQUIRE(three.size() == 3);
  CHECK(three[0] == doctest::Approx(1.0));
  CHECK(three[1] == doctest::Approx(2.0));
  CHECK(three[2] == doctest::Approx(3.0));

  const auto zero = real_cubic_roots(1, 0, 0);
  REQUIRE(zero.size() >= 2);
  CHECK(zero.front() == doctest::Approx(-1.0));
  CHECK(std::fabs(zero.back()) < 1e-12);
}

TEST_CASE("random cubics match companion-matrix eigenvalues") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-10, 10);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    const double b1 = u(rng), b2 = u(rng), b3 = u(rng);
    std::vector<double> ref;
    for (auto z : oracle::companion_roots(b1, b2, b3))
      if (std::fabs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z))) ref.push_back(z.real());
    std::sort(ref.begin(), ref.end());
    const auto got = real_cubic_roots(b1, b2, b3);
    // Near-double roots can legitimately be reported with either multiplicity.
    if (got.size() != ref.size()) continue;
    ++compared;
    for (std::size_t j = 0; j < got.size(); ++j) CHECK(got[j] == doctest::Approx(ref[j]).epsilon(1e-8).scale(1));
  }
  CHECK(compared >= 295);
}

TEST_CASE("roots are ascending and are roots") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 200; ++i) {
    const double b1 = u(rng), b2 = u(rng), b3 = u(rng);
    const auto r = real_cubic_roots(b1, b2, b3);
    REQUIRE(!r.empty());
    CHECK(std::is_sorted(r.begin(), r.end()));
    for (double z : r) {
      const double scale = std::fabs(z * z * z) + std::fabs(b1 * z * z) + std::fabs(b2 * z) + std::fabs(b3);
      CHECK(std::fabs(((z + b1) * z + b2) * z + b3) <= 1e-10 * scale);
    }
  }
}
