#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tonguelock/lyapunov.hpp"

using namespace tonguelock;

namespace {
constexpr double kGolden = 0.6180339887498949;

FiberFamily seeded_arnold(SplitMix64& rng) {
  TrigPoly q;
  for (int idx = 0; idx < 5; ++idx) q.set_coefficient(idx, rng.next_in(-0.5, 0.5));
  return FiberFamily::arnold(rng.next_in(0.0, 1.0), rng.next_in(0.0, 0.95),
                             rng.next_in(-1.0, 1.0), q);
}
}  // namespace

TEST_SUITE_BEGIN("lyapunov");

TEST_CASE("log derivative sums at the unforced fixed points") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const BasePoint x = base.torus_point({0.3});
  const FiberFamily f = FiberFamily::arnold(0.0, 0.5, 0.0, TrigPoly{});
  CHECK(log_derivative_sum(f, base, x, 0.0, 10) ==
        doctest::Approx(4.054651081082).epsilon(1e-10));
  CHECK(log_derivative_sum(f, base, x, 0.5, 10) ==
        doctest::Approx(-6.931471805599).epsilon(1e-10));
  const FiberFamily rigid = FiberFamily::arnold(0.3, 0.0, 0.0, TrigPoly{});
  CHECK(log_derivative_sum(rigid, base, x, 0.25, 100) ==
        doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("chain rule consistency over concatenated segments") {
  const BaseMap base = BaseMap::rotation({kGolden});
  SplitMix64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const FiberFamily f = seeded_arnold(rng);
    BasePoint x = base.sample(rng);
    const double w = rng.next_double();
    const long n = 15, m = 9;
    const double sn = log_derivative_sum(f, base, x, w, n);
    BasePoint xn = x;
    double wn = w;
    for (long k = 0; k < n; ++k) {
      wn = f.lift_eval_phase(base_phase(xn), wn);
      base.step_in_place(xn);
    }
    const double sm = log_derivative_sum(f, base, xn, wn, m);
    const double snm = log_derivative_sum(f, base, x, w, n + m);
    CHECK(std::abs(snm - (sn + sm)) < 1e-9 * static_cast<double>(n + m));
  }
}

TEST_CASE("exponent bounds bracket the unforced fixed-point exponents") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = FiberFamily::arnold(0.0, 0.5, 0.0, TrigPoly{});
  // grid contains w = 0 (repeller, DF = 1.5) and w = 0.5 (attractor, DF = 0.5)
  const ExponentEstimate est = exponent_bounds(f, base, 256, {2, 64});
  CHECK(est.upper_L_plus >= std::log(1.5) - 1e-9);
  CHECK(est.lower_L_minus <= std::log(0.5) + 1e-9);
  CHECK(est.lower_L_minus <= est.upper_L_plus);
  CHECK(est.rigor == Rigor::Heuristic);
}

TEST_CASE("rigid families have zero exponents and zero margin terms") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = FiberFamily::arnold(0.37, 0.0, 0.0, TrigPoly{});
  const ExponentEstimate est = exponent_bounds(f, base, 128, {4, 8});
  CHECK(std::abs(est.upper_L_plus) <= est.margin + 1e-12);
  CHECK(std::abs(est.lower_L_minus) <= est.margin + 1e-12);
  CHECK(est.margin < 1e-10);
  CHECK(est.rigor == Rigor::Rigorous);
}

TEST_CASE("extremal bounds respect the norm bound ceiling") {
  const BaseMap base = BaseMap::rotation({kGolden});
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const FiberFamily f = seeded_arnold(rng);
    const ExponentEstimate est = exponent_bounds(f, base, 16, {8, 64});
    const double cap = std::log(f.norm_bound()) + est.margin + 1e-12;
    CHECK(est.upper_L_plus <= cap);
    CHECK(-est.lower_L_minus <= cap);
  }
}

TEST_CASE("subadditive upper estimates shrink with n") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = FiberFamily::arnold(0.13, 0.6, 0.2, TrigPoly::cosine());
  const ExponentEstimate a = exponent_bounds(f, base, 16, {8, 256});
  const ExponentEstimate b = exponent_bounds(f, base, 32, {8, 256});
  const double slack = 2.0 * (a.margin + b.margin) + 0.05;
  CHECK(32.0 * b.upper_L_plus <= 2.0 * (16.0 * a.upper_L_plus) + slack);
}

TEST_CASE("derivative integral check returns 1") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const BasePoint x = base.torus_point({0.1237});
  SUBCASE("paper normalization at a steep forced family") {
    const FiberFamily f = FiberFamily::arnold(0.37, 0.9, 1.0, TrigPoly::cosine());
    CHECK(std::abs(derivative_integral_check(f, base, x, 6, 4096) - 1.0) < 1e-6);
    CHECK(std::abs(derivative_integral_check(f, base, x, 1, 4096) - 1.0) < 1e-8);
  }
  SUBCASE("rigid families integrate exactly") {
    const FiberFamily f = FiberFamily::arnold(0.3, 0.0, 0.0, TrigPoly{});
    CHECK(derivative_integral_check(f, base, x, 5, 64) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("20 seeded families, n <= 8") {
    SplitMix64 rng(314);
    for (int trial = 0; trial < 20; ++trial) {
      const FiberFamily f = seeded_arnold(rng);
      const long n = 1 + static_cast<long>(rng.next_below(8));
      CHECK(std::abs(derivative_integral_check(f, base, x, n, 4096) - 1.0) < 1e-6);
    }
  }
  SUBCASE("rejects odd or tiny node counts") {
    const FiberFamily f = FiberFamily::arnold(0.3, 0.0, 0.0, TrigPoly{});
    CHECK_THROWS_AS(derivative_integral_check(f, base, x, 1, 7),
                    std::invalid_argument);
    CHECK_THROWS_AS(derivative_integral_check(f, base, x, 1, 4),
                    std::invalid_argument);
  }
}

TEST_SUITE_END();
