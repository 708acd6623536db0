#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tonguelock/rng.hpp"

namespace tonguelock {

struct TorusPoint {
  std::vector<double> coords;  // each in [0, 1)
  bool operator==(const TorusPoint&) const = default;
};

struct OdometerPoint {
  std::vector<int> digits;  // digit i in [0, radix_i), least significant first
  double phase = 0.0;       // radix embedding sum d_i / (r_0...r_i), cached by BaseMap
  bool operator==(const OdometerPoint&) const = default;
};

using BasePoint = std::variant<TorusPoint, OdometerPoint>;

// Distance on the circle R/Z.
double circle_distance(double a, double b);
// Reduce to [0, 1).
double wrap_unit(double t);

// The circle coordinate at which fiberwise forcing functions are evaluated:
// the last torus coordinate (for the skew-shift this is the skewed one), or
// the cached radix embedding for odometer points. Periodic forcing composed
// with this map is continuous on the base.
double base_phase(const BasePoint& p);

// Base homeomorphism g: X -> X. Three uniquely ergodic variants:
//   Rotation   x -> x + omega (mod 1 componentwise) on T^d,
//   SkewShift  (x, y) -> (x + alpha, y + x) on T^2,
//   Odometer   add-one-with-carry on prod Z/(radix_i), finite digit window.
// Carry past the window wraps, making the window-truncated odometer exactly
// periodic with period prod radix_i.
class BaseMap {
 public:
  enum class Kind { Rotation, SkewShift, Odometer };

  static BaseMap rotation(std::vector<double> omega);
  static BaseMap skew_shift(double alpha);
  static BaseMap odometer(std::vector<int> radices);

  Kind kind() const { return kind_; }
  std::size_t dimension() const;  // torus dimensions, or digit window length
  bool is_isometry() const { return kind_ == Kind::Rotation; }
  // 1.0 for Rotation; declared (heuristic) bounds for the others.
  double lipschitz_in_base() const;

  const std::vector<double>& omega() const { return omega_; }
  double alpha() const { return alpha_; }
  const std::vector<int>& radices() const { return radices_; }

  BasePoint start() const;                       // all-zero point
  BasePoint torus_point(std::vector<double> coords) const;
  BasePoint odometer_point(std::vector<int> digits) const;

  void step_in_place(BasePoint& p) const;
  BasePoint step(const BasePoint& p) const;
  std::vector<BasePoint> orbit(const BasePoint& p, long n) const;

  BasePoint sample(SplitMix64& rng) const;  // uniform point
  // Uniform product grid with `nodes` per torus coordinate; for the odometer,
  // the first `nodes` states of the adding machine (mixed-radix digits of j).
  std::vector<BasePoint> grid(int nodes) const;

  std::string describe() const;

 private:
  BaseMap() = default;
  void check_point(const BasePoint& p) const;

  Kind kind_ = Kind::Rotation;
  std::vector<double> omega_;
  double alpha_ = 0.0;
  std::vector<int> radices_;
};

struct CocycleWitness {
  double value;  // t = integral of phi
  std::function<double(const BasePoint&)> phi;
  std::function<double(const BasePoint&)> psi;  // circle-valued, in [0, 1)
};

struct SchwartzmanGenerators {
  enum class Rigor { Exact, Declared };
  std::vector<CocycleWitness> witnesses;  // nonempty; always contains t = 1
  Rigor rigor = Rigor::Exact;
  std::vector<double> values() const;
};

// Analytically known generators of the Schwartzman range, each paired with
// the (phi, psi) functions witnessing psi(g x) - psi(x) = phi(x) mod 1.
SchwartzmanGenerators schwartzman_generators(const BaseMap& map);

// Max over seeded uniform samples of the circle distance between
// psi(g x) - psi(x) and phi(x) mod 1. Zero (up to fp) certifies the pair.
double cocycle_residual(const BaseMap& map,
                        const std::function<double(const BasePoint&)>& phi,
                        const std::function<double(const BasePoint&)>& psi,
                        int samples, std::uint64_t seed);

}  // namespace tonguelock
