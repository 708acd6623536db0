#pragma once

#include <stdexcept>
#include <vector>

#include "tonguelock/base.hpp"
#include "tonguelock/trigpoly.hpp"

namespace tonguelock {

// lift_inverse gave up before reaching tolerance.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Fiber mode k: the coefficients of cos(2 pi k w) and sin(2 pi k w) in the
// displacement, each a trig polynomial in the base phase.
struct FiberMode {
  TrigPoly cos_coeff;
  TrigPoly sin_coeff;
  bool operator==(const FiberMode&) const = default;
};

// A parametrized family of degree-one circle lifts
//
//   F_x(w) = w + d(x, w),   d(x, w) = C(x) + sum_k A_k(x) cos(2 pi k w)
//                                            + B_k(x) sin(2 pi k w),
//
// where x enters through base_phase. All three public constructors reduce to
// this form:
//   Arnold   d = tau + (alpha/2pi) sin(2 pi w) + beta q(x)
//   PFamily  d = P(w) + forcing(x),  with sup|P'| < 1
//   TrigLift general coefficients.
//
// Degree one (F_x(w+1) = F_x(w) + 1) holds by construction; the
// orientation-preserving check inf DF > 0 is validated on a grid with a
// second-derivative correction at construction and rejected otherwise.
// Fiber values are carried unreduced on the real line; reduce mod 1 only
// for presentation.
class FiberFamily {
 public:
  enum class Kind { Arnold, PFamily, TrigLift };

  FiberFamily() = default;  // identity lift F_x(w) = w

  static FiberFamily arnold(double tau, double alpha, double beta, TrigPoly q);
  static FiberFamily pfamily(TrigPoly p, TrigPoly forcing);
  static FiberFamily trig_lift(TrigPoly constant, std::vector<FiberMode> modes);

  Kind kind() const { return kind_; }
  double tau() const { return tau_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  // The coefficient vector the perturbation probes act on: q for Arnold,
  // the additive forcing for PFamily, the constant coefficient for TrigLift.
  const TrigPoly& forcing() const { return forcing_; }
  FiberFamily with_forcing(TrigPoly q) const;

  double displacement(double phase, double w) const;
  double lift_eval_phase(double phase, double w) const {
    return w + displacement(phase, w);
  }
  double lift_derivative_phase(double phase, double w) const;
  double lift_inverse_phase(double phase, double z) const;

  double lift_eval(const BasePoint& x, double w) const {
    return lift_eval_phase(base_phase(x), w);
  }
  double lift_derivative(const BasePoint& x, double w) const {
    return lift_derivative_phase(base_phase(x), w);
  }
  double lift_inverse(const BasePoint& x, double z) const {
    return lift_inverse_phase(base_phase(x), z);
  }

  // Safe overestimates from l1 coefficient sums, fixed at construction.
  double norm_bound() const { return norm_bound_; }          // sup(|DF|, |DF^-1|), >= 1
  double base_lipschitz() const { return base_lipschitz_; }  // sup |d d/d phase|
  double disp_min_bound() const { return disp_min_; }
  double disp_max_bound() const { return disp_max_; }
  double second_derivative_bound() const { return d2w_; }    // sup |d^2 F/dw^2|
  double cross_derivative_bound() const { return dxw_; }     // sup |d^2 F/(dphase dw)|

  bool operator==(const FiberFamily&) const = default;

 private:
  void finalize();  // derive bounds, validate orientation

  Kind kind_ = Kind::TrigLift;
  double tau_ = 0.0, alpha_ = 0.0, beta_ = 0.0;
  TrigPoly forcing_;

  TrigPoly constant_;             // C(x), includes the forcing contribution
  std::vector<FiberMode> modes_;  // A_k(x), B_k(x)

  double norm_bound_ = 1.0;
  double base_lipschitz_ = 0.0;
  double disp_min_ = 0.0, disp_max_ = 0.0;
  double d2w_ = 0.0, dxw_ = 0.0;
};

// Displacement of the n-step eps-shifted orbit: (F_eps^n)_x(y) - y, where
// each step applies the lift and then adds eps. eps = 0 gives the plain
// displacement whose n-th fraction estimates the rotation number.
double displacement_orbit(const FiberFamily& fam, const BaseMap& map,
                          const BasePoint& x, double y, long n, double eps);

}  // namespace tonguelock
