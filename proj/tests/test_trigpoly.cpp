#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tonguelock/rng.hpp"
#include "tonguelock/trigpoly.hpp"

using tonguelock::SplitMix64;
using tonguelock::TrigPoly;

TEST_SUITE_BEGIN("trigpoly");

TEST_CASE("evaluation matches closed forms") {
  const TrigPoly p(0.5, {1.0, 0.0}, {0.0, -2.0});
  // p(t) = 0.5 + cos(2 pi t) - 2 sin(4 pi t)
  CHECK(p(0.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(p(0.25) == doctest::Approx(0.5 - 1.0 - 0.0).epsilon(1e-12));
  CHECK(p(0.125) ==
        doctest::Approx(0.5 + std::cos(M_PI / 4.0) - 2.0).epsilon(1e-12));
}

TEST_CASE("periodicity is exact up to trig rounding") {
  SplitMix64 rng(42);
  const TrigPoly p(0.1, {0.3, -0.2, 0.05}, {0.7, 0.0, -0.4});
  for (int i = 0; i < 200; ++i) {
    const double t = rng.next_in(-2.0, 2.0);
    CHECK(p(t + 1.0) == doctest::Approx(p(t)).epsilon(1e-12));
  }
}

TEST_CASE("derivative matches finite differences") {
  const TrigPoly p(0.0, {0.4, -0.1}, {0.2, 0.3});
  const double h = 1e-6;
  SplitMix64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const double t = rng.next_double();
    const double fd = (p(t + h) - p(t - h)) / (2.0 * h);
    CHECK(p.derivative(t) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("l1 bounds dominate sampled values") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(3), b(3);
    for (auto& c : a) c = rng.next_in(-1.0, 1.0);
    for (auto& c : b) c = rng.next_in(-1.0, 1.0);
    const TrigPoly p(rng.next_in(-1.0, 1.0), a, b);
    for (int i = 0; i < 100; ++i) {
      const double t = rng.next_double();
      CHECK(std::abs(p(t)) <= p.sup_bound() + 1e-12);
      CHECK(std::abs(p.derivative(t)) <= p.derivative_sup_bound() + 1e-10);
    }
  }
}

TEST_CASE("parse and format round trip") {
  const TrigPoly p = TrigPoly::parse("0.25; 1,0; 0.5,-0.125");
  CHECK(p.constant_term() == 0.25);
  CHECK(p.modes() == 2);
  CHECK(p.coefficient(1) == 1.0);   // a_1
  CHECK(p.coefficient(4) == -0.125);  // b_2
  const TrigPoly q = TrigPoly::parse(p.format());
  CHECK(q == p);
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(TrigPoly::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(TrigPoly::parse("0; 1"), std::invalid_argument);
  CHECK_THROWS_AS(TrigPoly::parse("0; 1,x"), std::invalid_argument);
}

TEST_CASE("coefficient indexing and trim") {
  TrigPoly p;
  p.set_coefficient(0, 0.5);
  p.set_coefficient(2, 1.25);  // b_1
  CHECK(p.modes() == 1);
  CHECK(p(0.25) == doctest::Approx(0.5 + 1.25).epsilon(1e-14));
  p.set_coefficient(2, 0.0);
  p.trim();
  CHECK(p.is_constant());
}

TEST_SUITE_END();
