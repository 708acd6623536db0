#include "tonguelock/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tonguelock/parallel.hpp"

namespace tonguelock {

const char* to_string(Rigor r) {
  return r == Rigor::Rigorous ? "rigorous" : "heuristic";
}

namespace {

// sum_{k=0}^{n-1} nb^k, saturating instead of overflowing.
double chained_sum(double nb, long n) {
  if (nb <= 1.0) return static_cast<double>(n);
  const double cap = 1e300;
  double sum = 0.0;
  double term = 1.0;
  for (long k = 0; k < n; ++k) {
    sum += term;
    if (sum > cap) return cap;
    term *= nb;
    if (term > cap) {
      // remaining terms only grow; saturate
      return cap;
    }
  }
  return sum;
}

}  // namespace

DisplacementStats displacement_bounds(const FiberFamily& fam, const BaseMap& map,
                                      long n, GridSpec grid, double eps) {
  if (n < 1) throw std::invalid_argument("displacement_bounds needs n >= 1");
  if (grid.grid_x < 2 || grid.grid_y < 2)
    throw std::invalid_argument("displacement_bounds needs >= 2 grid nodes per axis");

  const std::vector<BasePoint> xs = map.grid(grid.grid_x);
  const std::size_t ny = static_cast<std::size_t>(grid.grid_y);
  const std::size_t total = xs.size() * ny;
  std::vector<double> disp(total);

  par::parallel_for(static_cast<std::int64_t>(xs.size()), [&](std::int64_t ix) {
    BasePoint p = xs[static_cast<std::size_t>(ix)];
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const double y = static_cast<double>(iy) / static_cast<double>(ny);
      BasePoint q = p;
      double w = y;
      for (long k = 0; k < n; ++k) {
        w += fam.displacement(base_phase(q), w) + eps;
        map.step_in_place(q);
      }
      disp[static_cast<std::size_t>(ix) * ny + iy] = w - y;
    }
  });

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double d : disp) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }

  const double nb = fam.norm_bound();
  const double hx = 1.0 / static_cast<double>(grid.grid_x);
  const double hy = 1.0 / static_cast<double>(grid.grid_y);
  const double chain = chained_sum(nb, n);
  const double margin_x =
      fam.base_lipschitz() == 0.0 ? 0.0 : hx * fam.base_lipschitz() * chain;
  // Monotone lifts cap the y-side deviation of the displacement extrema at
  // one mesh cell; the derivative route (nb^n - 1) h_y is tighter for maps
  // close to rigid.
  const double margin_y = hy * std::min(1.0, (nb - 1.0) * chain);
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const double margin_fp =
      8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(n) * scale;

  DisplacementStats stats;
  stats.n = n;
  stats.m_lo = lo;
  stats.m_hi = hi;
  stats.margin = margin_x + margin_y + margin_fp;
  stats.grid_x = grid.grid_x;
  stats.grid_y = grid.grid_y;
  stats.eps = eps;
  stats.rigor = map.is_isometry() ? Rigor::Rigorous : Rigor::Heuristic;
  return stats;
}

RotationEnclosure rotation_enclosure(const FiberFamily& fam, const BaseMap& map,
                                     long n, GridSpec grid, double eps) {
  const DisplacementStats s = displacement_bounds(fam, map, n, grid, eps);
  RotationEnclosure enc;
  enc.lo = (s.m_lo - s.margin) / static_cast<double>(n);
  enc.hi = (s.m_hi + s.margin) / static_cast<double>(n);
  enc.n = n;
  enc.rigor = s.rigor;
  enc.flagged = s.margin_flagged();
  return enc;
}

double rho_orbit_estimate(const FiberFamily& fam, const BaseMap& map,
                          const BasePoint& x, double y, long n) {
  return displacement_orbit(fam, map, x, y, n, 0.0) / static_cast<double>(n);
}

}  // namespace tonguelock
