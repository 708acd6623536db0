#include "tonguelock/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tonguelock {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

FiberFamily FiberFamily::arnold(double tau, double alpha, double beta, TrigPoly q) {
  if (alpha < 0.0 || alpha >= 1.0)
    throw std::invalid_argument("arnold alpha must lie in [0, 1)");
  FiberFamily f;
  f.kind_ = Kind::Arnold;
  f.tau_ = tau;
  f.alpha_ = alpha;
  f.beta_ = beta;
  f.forcing_ = q;
  f.constant_ = q.scaled(beta).plus_constant(tau);
  f.constant_.trim();
  if (alpha != 0.0) {
    FiberMode m;
    m.sin_coeff = TrigPoly(alpha / kTwoPi);
    f.modes_.push_back(std::move(m));
  }
  f.finalize();
  return f;
}

FiberFamily FiberFamily::pfamily(TrigPoly p, TrigPoly forcing) {
  if (p.derivative_sup_bound() >= 1.0)
    throw std::invalid_argument("pfamily requires sup |P'| < 1");
  FiberFamily f;
  f.kind_ = Kind::PFamily;
  f.forcing_ = forcing;
  f.constant_ = forcing.plus_constant(p.constant_term());
  f.constant_.trim();
  for (int k = 1; k <= p.modes(); ++k) {
    FiberMode m;
    m.cos_coeff = TrigPoly(p.coefficient(2 * k - 1));
    m.sin_coeff = TrigPoly(p.coefficient(2 * k));
    f.modes_.push_back(std::move(m));
  }
  f.finalize();
  return f;
}

FiberFamily FiberFamily::trig_lift(TrigPoly constant, std::vector<FiberMode> modes) {
  FiberFamily f;
  f.kind_ = Kind::TrigLift;
  f.forcing_ = constant;
  f.constant_ = std::move(constant);
  f.modes_ = std::move(modes);
  f.finalize();
  return f;
}

FiberFamily FiberFamily::with_forcing(TrigPoly q) const {
  switch (kind_) {
    case Kind::Arnold: return arnold(tau_, alpha_, beta_, std::move(q));
    case Kind::PFamily: {
      // reassemble P from the stored constant modes
      TrigPoly p(constant_.constant_term() - forcing_.constant_term());
      for (std::size_t k = 0; k < modes_.size(); ++k) {
        p.set_coefficient(static_cast<int>(2 * k + 1),
                          modes_[k].cos_coeff.constant_term());
        p.set_coefficient(static_cast<int>(2 * k + 2),
                          modes_[k].sin_coeff.constant_term());
      }
      return pfamily(std::move(p), std::move(q));
    }
    case Kind::TrigLift: return trig_lift(std::move(q), modes_);
  }
  throw std::logic_error("unreachable");
}

void FiberFamily::finalize() {
  // l1 bounds over both variables
  double amp = 0.0;        // sum_k sup(|A_k|) + sup(|B_k|)
  double deriv_amp = 0.0;  // sum_k 2 pi k (...)
  double d2 = 0.0;         // sum_k (2 pi k)^2 (...)
  double dx = constant_.derivative_sup_bound();
  double dxw = 0.0;
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    const double w = kTwoPi * static_cast<double>(k + 1);
    const double sup = modes_[k].cos_coeff.sup_bound() + modes_[k].sin_coeff.sup_bound();
    const double dsup = modes_[k].cos_coeff.derivative_sup_bound() +
                        modes_[k].sin_coeff.derivative_sup_bound();
    amp += sup;
    deriv_amp += w * sup;
    d2 += w * w * sup;
    dx += dsup;
    dxw += w * dsup;
  }
  base_lipschitz_ = dx;
  d2w_ = d2;
  dxw_ = dxw;
  disp_max_ = constant_.constant_term() + constant_.amplitude_l1() + amp;
  disp_min_ = constant_.constant_term() - constant_.amplitude_l1() - amp;

  // Orientation check: grid infimum of DF minus the mesh correction from the
  // second-derivative and cross-derivative bounds must stay positive.
  const int px = constant_.is_constant() && dx == 0.0 ? 1 : 33;
  const int pw = 129;
  double grid_inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < px; ++i) {
    const double phase = static_cast<double>(i) / static_cast<double>(px);
    for (int j = 0; j < pw; ++j) {
      const double w = static_cast<double>(j) / static_cast<double>(pw);
      grid_inf = std::min(grid_inf, lift_derivative_phase(phase, w));
    }
  }
  const double correction = d2w_ / pw + (px > 1 ? dxw_ / px : 0.0);
  const double df_lower_grid = grid_inf - correction;
  const double df_lower_l1 = 1.0 - deriv_amp;
  const double df_lower = std::max(df_lower_grid, df_lower_l1);
  if (df_lower <= 0.0)
    throw std::invalid_argument(
        "fiber family is not an orientation-preserving diffeomorphism "
        "(validated derivative lower bound <= 0)");
  norm_bound_ = std::max({1.0, 1.0 + deriv_amp, 1.0 / df_lower});
}

double FiberFamily::displacement(double phase, double w) const {
  double d = constant_(phase);
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    const double arg = kTwoPi * static_cast<double>(k + 1) * w;
    const double a = modes_[k].cos_coeff.is_constant()
                         ? modes_[k].cos_coeff.constant_term()
                         : modes_[k].cos_coeff(phase);
    const double b = modes_[k].sin_coeff.is_constant()
                         ? modes_[k].sin_coeff.constant_term()
                         : modes_[k].sin_coeff(phase);
    d += a * std::cos(arg) + b * std::sin(arg);
  }
  return d;
}

double FiberFamily::lift_derivative_phase(double phase, double w) const {
  double df = 1.0;
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    const double freq = kTwoPi * static_cast<double>(k + 1);
    const double arg = freq * w;
    const double a = modes_[k].cos_coeff.is_constant()
                         ? modes_[k].cos_coeff.constant_term()
                         : modes_[k].cos_coeff(phase);
    const double b = modes_[k].sin_coeff.is_constant()
                         ? modes_[k].sin_coeff.constant_term()
                         : modes_[k].sin_coeff(phase);
    df += freq * (-a * std::sin(arg) + b * std::cos(arg));
  }
  return df;
}

double FiberFamily::lift_inverse_phase(double phase, double z) const {
  // Monotone bracket from the displacement range, bisected to 1e-6 and
  // polished by safeguarded Newton to residual 1e-12.
  double lo = z - disp_max_ - 1e-9;
  double hi = z - disp_min_ + 1e-9;
  for (int it = 0; it < 80 && hi - lo > 1e-6; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (lift_eval_phase(phase, mid) < z)
      lo = mid;
    else
      hi = mid;
  }
  double y = 0.5 * (lo + hi);
  double res = lift_eval_phase(phase, y) - z;
  for (int it = 0; it < 40; ++it) {
    if (std::abs(res) < 1e-12) return y;
    const double df = lift_derivative_phase(phase, y);
    double next = y - res / df;
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    const double fres = lift_eval_phase(phase, next) - z;
    if (fres < 0.0)
      lo = next;
    else
      hi = next;
    y = next;
    res = fres;
  }
  if (std::abs(res) < 1e-12) return y;
  throw NumericError("lift_inverse did not converge", std::abs(res));
}

double displacement_orbit(const FiberFamily& fam, const BaseMap& map,
                          const BasePoint& x, double y, long n, double eps) {
  if (n < 1) throw std::invalid_argument("displacement_orbit needs n >= 1");
  BasePoint p = x;
  double w = y;
  for (long i = 0; i < n; ++i) {
    w += fam.displacement(base_phase(p), w) + eps;
    map.step_in_place(p);
  }
  return w - y;
}

}  // namespace tonguelock
