#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tonguelock/rotation.hpp"

using namespace tonguelock;

namespace {
constexpr double kGolden = 0.6180339887498949;

FiberFamily unforced(double tau, double alpha) {
  return FiberFamily::arnold(tau, alpha, 0.0, TrigPoly{});
}
}  // namespace

TEST_SUITE_BEGIN("rotation");

TEST_CASE("rigid rotation has constant displacement and tiny margin") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = unforced(1.0 / 3.0, 0.0);
  const DisplacementStats s = displacement_bounds(f, base, 300, {8, 8}, 0.0);
  CHECK(s.m_lo == doctest::Approx(100.0).epsilon(1e-10));
  CHECK(s.m_hi == doctest::Approx(100.0).epsilon(1e-10));
  CHECK(s.margin < 1e-8);
  CHECK(s.rigor == Rigor::Rigorous);
  CHECK_FALSE(s.margin_flagged());
}

TEST_CASE("grid including y=0 brackets the fixed-point displacement") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = unforced(0.0, 0.5);
  const DisplacementStats s = displacement_bounds(f, base, 50, {8, 16}, 0.0);
  CHECK(s.m_lo <= 0.0);
  CHECK(s.m_hi >= 0.0);
}

TEST_CASE("eps shift acts linearly on a rigid rotation") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = unforced(0.3, 0.0);
  const DisplacementStats s0 = displacement_bounds(f, base, 50, {8, 8}, 0.0);
  const DisplacementStats sE = displacement_bounds(f, base, 50, {8, 8}, 0.01);
  CHECK(sE.m_lo == doctest::Approx(s0.m_lo + 0.5).epsilon(1e-10));
  CHECK(sE.m_hi == doctest::Approx(s0.m_hi + 0.5).epsilon(1e-10));
}

TEST_CASE("enclosure pins an exact rotation to high precision") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = unforced(1.0 / 3.0, 0.0);
  const RotationEnclosure enc = rotation_enclosure(f, base, 10000, {4, 8}, 0.0);
  CHECK(enc.contains(1.0 / 3.0));
  CHECK(enc.width() < 1e-9);
  CHECK(enc.rigor == Rigor::Rigorous);
}

TEST_CASE("enclosure contains zero for the locked sine family") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = unforced(0.0, 0.5);
  const RotationEnclosure enc = rotation_enclosure(f, base, 1000, {8, 32}, 0.0);
  CHECK(enc.contains(0.0));
}

TEST_CASE("enclosures at n and 2n overlap when rigorous") {
  const BaseMap base = BaseMap::rotation({kGolden});
  SplitMix64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    TrigPoly q;
    for (int idx = 0; idx < 3; ++idx) q.set_coefficient(idx, rng.next_in(-0.3, 0.3));
    const FiberFamily f = FiberFamily::arnold(rng.next_in(0.0, 0.5),
                                              rng.next_in(0.0, 0.3),
                                              rng.next_in(-0.3, 0.3), q);
    const long n = 24;
    const RotationEnclosure a = rotation_enclosure(f, base, n, {16, 16}, 0.0);
    const RotationEnclosure b = rotation_enclosure(f, base, 2 * n, {16, 16}, 0.0);
    if (a.flagged || b.flagged) continue;
    CHECK(a.lo <= b.hi);
    CHECK(b.lo <= a.hi);
  }
}

TEST_CASE("superadditivity on matched orbits") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = FiberFamily::arnold(0.2, 0.4, 0.3, TrigPoly::cosine());
  SplitMix64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    BasePoint x = base.sample(rng);
    const double y = rng.next_double();
    const long n = 12, m = 18;
    const double dn = displacement_orbit(f, base, x, y, n, 0.0);
    BasePoint xn = x;
    for (long k = 0; k < n; ++k) base.step_in_place(xn);
    const double dm = displacement_orbit(f, base, xn, y + dn, m, 0.0);
    const double dnm = displacement_orbit(f, base, x, y, n + m, 0.0);
    CHECK(std::abs(dnm - (dn + dm)) < 1e-8);
  }
}

TEST_CASE("enclosure bounds are nondecreasing in eps") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = FiberFamily::arnold(0.1, 0.5, 0.2, TrigPoly::cosine());
  const long n = 64;
  RotationEnclosure prev = rotation_enclosure(f, base, n, {16, 16}, -0.02);
  for (double eps : {-0.01, 0.0, 0.01, 0.02}) {
    const RotationEnclosure cur = rotation_enclosure(f, base, n, {16, 16}, eps);
    CHECK(cur.lo >= prev.lo - 1e-12);
    CHECK(cur.hi >= prev.hi - 1e-12);
    prev = cur;
  }
}

TEST_CASE("margin flag trips on exponential blow-up") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = FiberFamily::arnold(0.1, 0.6, 0.5, TrigPoly::cosine());
  // base_lipschitz > 0 and norm_bound > 2 chain into a hopeless margin
  const DisplacementStats s = displacement_bounds(f, base, 512, {8, 8}, 0.0);
  CHECK(s.margin_flagged());
}

TEST_CASE("rho orbit estimate") {
  const BaseMap base = BaseMap::rotation({kGolden});
  SUBCASE("exact for rigid rotation") {
    const FiberFamily f = unforced(0.3, 0.0);
    CHECK(rho_orbit_estimate(f, base, base.torus_point({0.1}), 0.7, 1000) ==
          doctest::Approx(0.3).epsilon(1e-12));
  }
  SUBCASE("converges into the locked tongue") {
    const FiberFamily f = unforced(0.0, 0.5);
    CHECK(std::abs(rho_orbit_estimate(f, base, base.torus_point({0.2}), 0.25,
                                      10000)) < 1e-3);
  }
  SUBCASE("start-point independence for the unforced family") {
    const FiberFamily f = unforced(0.27, 0.35);
    const long n = 100000;
    const double r1 =
        rho_orbit_estimate(f, base, base.torus_point({0.1}), 0.3, n);
    const double r2 =
        rho_orbit_estimate(f, base, base.torus_point({0.8}), 0.9, n);
    CHECK(std::abs(r1 - r2) < 2.0 / static_cast<double>(n) + 1e-6);
  }
}

TEST_CASE("doubling the grid at fixed n does not widen the spread much") {
  const BaseMap base = BaseMap::rotation({kGolden});
  const FiberFamily f = FiberFamily::arnold(0.05, 0.3, 0.1, TrigPoly::cosine());
  const long n = 32;
  const DisplacementStats coarse = displacement_bounds(f, base, n, {16, 16}, 0.0);
  const DisplacementStats fine = displacement_bounds(f, base, n, {32, 32}, 0.0);
  // finer grids only discover more extreme displacements, within the margins
  CHECK(fine.m_hi >= coarse.m_hi - 1e-12);
  CHECK(fine.m_lo <= coarse.m_lo + 1e-12);
  CHECK(fine.m_hi - fine.m_lo <= (coarse.m_hi - coarse.m_lo) + 2.0 * coarse.margin);
}

TEST_SUITE_END();
