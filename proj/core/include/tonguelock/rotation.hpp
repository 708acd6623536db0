#pragma once

#include "tonguelock/fiber.hpp"

namespace tonguelock {

enum class Rigor { Rigorous, Heuristic };

const char* to_string(Rigor r);

struct GridSpec {
  int grid_x = 64;  // nodes per base dimension (tower states for odometers)
  int grid_y = 64;  // fiber nodes over [0, 1)
};

// Finite-n orbit-displacement extrema over a sampled (x, y) product grid,
// with a Lipschitz margin bounding how far the true inf/sup over the whole
// space can sit beyond the grid values. The y-direction margin uses the
// smaller of the monotone-lift bound h_y and the chained derivative bound
// (nb^n - 1) h_y; the x-direction chains through norm_bound per step.
// Rigorous only over isometric (Rotation) bases.
struct DisplacementStats {
  long n = 0;
  double m_lo = 0.0;
  double m_hi = 0.0;
  double margin = 0.0;
  int grid_x = 0;
  int grid_y = 0;
  double eps = 0.0;
  Rigor rigor = Rigor::Heuristic;

  // Exponential blow-up flag; callers must treat flagged stats as Undecided
  // evidence.
  bool margin_flagged() const { return margin > 0.25 * static_cast<double>(n); }
};

// [lo, hi] contains rho(F_eps) whenever rigor is Rigorous: the infimum
// displacement is superadditive and the supremum subadditive, so
// m_lo/n <= rho <= m_hi/n holds at every n for the true extrema.
struct RotationEnclosure {
  double lo = 0.0;
  double hi = 0.0;
  long n = 0;
  Rigor rigor = Rigor::Heuristic;
  bool flagged = false;

  double width() const { return hi - lo; }
  bool contains(double rho) const { return lo <= rho && rho <= hi; }
};

DisplacementStats displacement_bounds(const FiberFamily& fam, const BaseMap& map,
                                      long n, GridSpec grid, double eps);

RotationEnclosure rotation_enclosure(const FiberFamily& fam, const BaseMap& map,
                                     long n, GridSpec grid, double eps);

// displacement/n from a single orbit; fast uncertified path for scans.
double rho_orbit_estimate(const FiberFamily& fam, const BaseMap& map,
                          const BasePoint& x, double y, long n);

}  // namespace tonguelock
