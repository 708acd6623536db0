#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tonguelock {

// Real trigonometric polynomial on the circle (period 1):
//
//   p(t) = c0 + sum_k a_k cos(2 pi k t) + b_k sin(2 pi k t),  k = 1..K.
//
// Periodicity p(t+1) = p(t) holds by construction. The l1 coefficient sums
// give safe sup bounds for p and its derivatives; downstream margin budgets
// rely on these being overestimates, never underestimates.
class TrigPoly {
 public:
  TrigPoly() = default;
  explicit TrigPoly(double constant) : constant_(constant) {}
  TrigPoly(double constant, std::vector<double> cos_coeffs,
           std::vector<double> sin_coeffs);

  static TrigPoly cosine(int k = 1, double amplitude = 1.0);
  static TrigPoly sine(int k = 1, double amplitude = 1.0);

  // Text form "c0; a1,b1; a2,b2; ...". Throws std::invalid_argument on
  // malformed input.
  static TrigPoly parse(std::string_view text);
  std::string format() const;

  double operator()(double t) const;
  double derivative(double t) const;

  double constant_term() const { return constant_; }
  int modes() const { return static_cast<int>(cos_.size()); }
  bool is_constant() const { return cos_.empty(); }

  // sum_k (|a_k| + |b_k|)
  double amplitude_l1() const;
  // |c0| + amplitude_l1(): sup |p|
  double sup_bound() const;
  // sum_k 2 pi k (|a_k| + |b_k|): sup |p'|
  double derivative_sup_bound() const;
  // sum_k (2 pi k)^2 (|a_k| + |b_k|): sup |p''|
  double second_derivative_sup_bound() const;

  TrigPoly scaled(double s) const;
  TrigPoly plus_constant(double c) const;
  friend TrigPoly operator+(const TrigPoly& x, const TrigPoly& y);

  // Flat coefficient view used by the perturbation probes:
  // index 0 -> c0, 2k-1 -> a_k, 2k -> b_k.
  int coefficient_count() const { return 1 + 2 * modes(); }
  double coefficient(int index) const;
  void set_coefficient(int index, double value);
  // Grow to at least `k` modes (zero padding).
  void ensure_modes(int k);
  // Drop trailing all-zero modes.
  void trim();

  bool operator==(const TrigPoly& other) const = default;

 private:
  double constant_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

}  // namespace tonguelock
