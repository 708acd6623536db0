#include "tonguelock/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tonguelock/parallel.hpp"

namespace tonguelock {

double log_derivative_sum(const FiberFamily& fam, const BaseMap& map,
                          const BasePoint& x, double w, long n) {
  if (n < 1) throw std::invalid_argument("log_derivative_sum needs n >= 1");
  BasePoint p = x;
  double sum = 0.0;
  double y = w;
  for (long i = 0; i < n; ++i) {
    const double phase = base_phase(p);
    sum += std::log(fam.lift_derivative_phase(phase, y));
    y = fam.lift_eval_phase(phase, y);
    map.step_in_place(p);
  }
  return sum;
}

ExponentEstimate exponent_bounds(const FiberFamily& fam, const BaseMap& map,
                                 long n, GridSpec grid) {
  if (n < 1) throw std::invalid_argument("exponent_bounds needs n >= 1");
  if (grid.grid_x < 2 || grid.grid_y < 2)
    throw std::invalid_argument("exponent_bounds needs >= 2 grid nodes per axis");

  const std::vector<BasePoint> xs = map.grid(grid.grid_x);
  const std::size_t ny = static_cast<std::size_t>(grid.grid_y);
  std::vector<double> sums(xs.size() * ny);

  par::parallel_for(static_cast<std::int64_t>(xs.size()), [&](std::int64_t ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const double w = static_cast<double>(iy) / static_cast<double>(ny);
      sums[static_cast<std::size_t>(ix) * ny + iy] =
          log_derivative_sum(fam, map, xs[static_cast<std::size_t>(ix)], w, n);
    }
  });

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double s : sums) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  const double inv_n = 1.0 / static_cast<double>(n);

  // Per-step local Lipschitz budget for log DF: |d log DF| <= |d DF| / DF,
  // and 1/DF <= norm_bound.
  const double nb = fam.norm_bound();
  const double hx = 1.0 / static_cast<double>(grid.grid_x);
  const double hw = 1.0 / static_cast<double>(grid.grid_y);
  const double lip_w = fam.second_derivative_bound() * nb;
  const double lip_x =
      (fam.cross_derivative_bound() +
       fam.second_derivative_bound() * fam.base_lipschitz()) * nb;
  const double margin_fp = 32.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::log(std::max(nb, 1.0)) + 1.0);
  const double margin = hx * lip_x + hw * lip_w + margin_fp;

  ExponentEstimate est;
  est.n = n;
  est.upper_L_plus = hi * inv_n + margin;
  est.lower_L_minus = lo * inv_n - margin;
  est.margin = margin;
  est.grid_x = grid.grid_x;
  est.grid_y = grid.grid_y;
  est.rigor = (map.is_isometry() && nb == 1.0) ? Rigor::Rigorous : Rigor::Heuristic;
  return est;
}

namespace {

// Fixed-tree pairwise sum; independent of worker count and stabler than a
// running accumulator.
double pairwise_sum(const double* v, std::size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += v[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}

}  // namespace

double derivative_integral_check(const FiberFamily& fam, const BaseMap& map,
                                 const BasePoint& x, long n, int nodes) {
  if (n < 1) throw std::invalid_argument("derivative_integral_check needs n >= 1");
  if (nodes < 8 || nodes % 2 != 0)
    throw std::invalid_argument("Simpson nodes must be even and >= 8");

  std::vector<double> weighted(static_cast<std::size_t>(nodes) + 1);
  par::parallel_for(nodes, [&](std::int64_t j) {
    const double w0 = static_cast<double>(j) / static_cast<double>(nodes);
    BasePoint p = x;
    double w = w0;
    double prod = 1.0;
    for (long i = 0; i < n; ++i) {
      const double phase = base_phase(p);
      prod *= fam.lift_derivative_phase(phase, w);
      w = fam.lift_eval_phase(phase, w);
      map.step_in_place(p);
    }
    const double coeff = (j == 0) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    weighted[static_cast<std::size_t>(j)] = coeff * prod;
  });
  // D is 1-periodic in w, so the endpoint value equals the j = 0 one.
  weighted[static_cast<std::size_t>(nodes)] = weighted[0];

  const double h = 1.0 / static_cast<double>(nodes);
  return h / 3.0 * pairwise_sum(weighted.data(), weighted.size());
}

}  // namespace tonguelock
