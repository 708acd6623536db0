#pragma once

#include "tonguelock/rotation.hpp"

namespace tonguelock {

// Finite-n brackets for the extremal fiberwise Lyapunov exponents.
// upper_L_plus = grid sup of (1/n) log D(f^n) plus margin; lower_L_minus the
// grid inf minus margin. The margin is a per-step local Lipschitz budget in
// (phase, w); chaining it through n steps would exceed any usable size for
// expanding families, so the estimate is flagged Heuristic whenever
// norm_bound > 1 or the base is not an isometry. By subadditivity the true
// (1/n) sup decreases to L_+ in n, so small n gives looser valid brackets.
struct ExponentEstimate {
  long n = 0;
  double upper_L_plus = 0.0;
  double lower_L_minus = 0.0;
  double margin = 0.0;
  int grid_x = 0;
  int grid_y = 0;
  Rigor rigor = Rigor::Heuristic;
};

// sum_{i<n} log DF at the orbit of (x, w).
double log_derivative_sum(const FiberFamily& fam, const BaseMap& map,
                          const BasePoint& x, double w, long n);

ExponentEstimate exponent_bounds(const FiberFamily& fam, const BaseMap& map,
                                 long n, GridSpec grid);

// Composite-Simpson quadrature of w -> D(f^n)_x(w) over one period; the
// integral is exactly 1 for every degree-one lift, so the return value is a
// numerical health check. nodes must be even and >= 8.
double derivative_integral_check(const FiberFamily& fam, const BaseMap& map,
                                 const BasePoint& x, long n, int nodes);

}  // namespace tonguelock
