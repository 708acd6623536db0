#include "tonguelock/locking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace tonguelock {

const char* to_string(LockClassification::Code code) {
  switch (code) {
    case LockClassification::Code::Locked: return "LOCKED";
    case LockClassification::Code::UnlockedUp: return "UNLOCKED_UP";
    case LockClassification::Code::UnlockedDown: return "UNLOCKED_DOWN";
    case LockClassification::Code::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

void Strip::validate() const {
  if (center.size() < 2 || center.size() != radius.size())
    throw std::invalid_argument("strip needs >= 2 matched nodes");
  const int n = nodes();
  for (int i = 0; i < n; ++i) {
    if (!(radius[i] > 0.0 && radius[i] < 0.5))
      throw std::invalid_argument("strip radius must lie in (0, 0.5)");
    const int j = (i + 1) % n;
    if (circle_distance(center[i], center[j]) >= 0.25)
      throw std::invalid_argument("strip centers jump by >= 0.25 between nodes");
    if (std::abs(radius[i] - radius[j]) >= 0.25)
      throw std::invalid_argument("strip radii jump by >= 0.25 between nodes");
  }
}

Strip Strip::with_radius(double r) const {
  Strip s;
  s.center = center;
  s.radius.assign(center.size(), r);
  return s;
}

namespace {

bool rotation_circle_base(const BaseMap& map) {
  return map.kind() == BaseMap::Kind::Rotation && map.dimension() == 1;
}

// Nearest-node image shift for x -> x + omega on an N-node grid.
int node_shift(const BaseMap& map, int n_nodes) {
  const double w = map.omega()[0];
  return static_cast<int>(std::llround(w * n_nodes)) % n_nodes;
}

}  // namespace

UnlockedOutcome unlocked_certificate(const FiberFamily& fam, const BaseMap& map,
                                     double eps, long n, GridSpec grid) {
  if (eps == 0.0) throw std::invalid_argument("unlocked_certificate needs eps != 0");
  if (n < 2) throw std::invalid_argument("unlocked_certificate needs n >= 2");

  const DisplacementStats stats0 = displacement_bounds(fam, map, n, grid, 0.0);
  const DisplacementStats statsE = displacement_bounds(fam, map, n, grid, eps);
  UnlockedOutcome out;
  if (stats0.margin_flagged() || statsE.margin_flagged()) {
    std::ostringstream s;
    s << "margin flagged at n=" << n << " (margin/n="
      << std::max(stats0.margin, statsE.margin) / static_cast<double>(n) << ")";
    out.note = s.str();
    return out;
  }
  const double margins = stats0.margin + statsE.margin;
  double gap = 0.0;
  if (eps > 0.0)
    gap = statsE.m_lo - stats0.m_hi - margins;
  else
    gap = stats0.m_lo - statsE.m_hi - margins;
  if (gap > 0.0) {
    out.gap_per_step = gap / static_cast<double>(n);
  } else {
    std::ostringstream s;
    s << "no displacement gap at eps=" << eps << " n=" << n << " (deficit=" << -gap
      << ")";
    out.note = s.str();
  }
  return out;
}

Strip find_candidate_strip(const FiberFamily& fam, const BaseMap& map,
                           int transient, int x_nodes, double radius0) {
  if (!rotation_circle_base(map))
    throw std::invalid_argument("candidate strips need a 1-d Rotation base");
  if (x_nodes < 2) throw std::invalid_argument("need >= 2 strip nodes");
  if (transient < 0) throw std::invalid_argument("transient must be >= 0");
  if (!(radius0 > 0.0 && radius0 < 0.5))
    throw std::invalid_argument("radius0 must lie in (0, 0.5)");

  const int shift = node_shift(map, x_nodes);
  std::vector<double> center(static_cast<std::size_t>(x_nodes), 0.5);
  std::vector<double> next(center.size());
  for (int t = 0; t < transient; ++t) {
    for (int i = 0; i < x_nodes; ++i) {
      const double phase = static_cast<double>(i) / static_cast<double>(x_nodes);
      next[static_cast<std::size_t>((i + shift) % x_nodes)] =
          wrap_unit(fam.lift_eval_phase(phase, center[static_cast<std::size_t>(i)]));
    }
    center.swap(next);
  }
  Strip s;
  s.center = std::move(center);
  s.radius.assign(static_cast<std::size_t>(x_nodes), radius0);
  return s;
}

LockedOutcome locked_certificate(const FiberFamily& fam, const BaseMap& map,
                                 const Strip& strip, double delta, int steps) {
  if (!rotation_circle_base(map))
    throw std::invalid_argument("locked_certificate needs a 1-d Rotation base");
  if (!(delta > 0.0))
    throw std::invalid_argument("locked_certificate needs delta > 0");
  if (steps < 1) throw std::invalid_argument("locked_certificate needs steps >= 1");
  strip.validate();

  const int n = strip.nodes();
  const double h = 1.0 / static_cast<double>(n);
  const int shift = node_shift(map, n);

  double slope = 0.0;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double jump = circle_distance(strip.center[i], strip.center[j]) +
                        std::abs(strip.radius[i] - strip.radius[j]);
    slope = std::max(slope, jump / h);
  }
  const double budget = h * (fam.base_lipschitz() + slope);

  std::vector<double> lo(strip.center.size()), hi(strip.center.size());
  for (int i = 0; i < n; ++i) {
    lo[static_cast<std::size_t>(i)] = strip.center[i] - strip.radius[i];
    hi[static_cast<std::size_t>(i)] = strip.center[i] + strip.radius[i];
  }

  LockedOutcome out;
  std::vector<double> img_lo(lo.size()), img_hi(hi.size());
  for (int step = 0; step < steps; ++step) {
    for (int i = 0; i < n; ++i) {
      const double phase = static_cast<double>(i) / static_cast<double>(n);
      const std::size_t j = static_cast<std::size_t>((i + shift) % n);
      img_lo[j] = fam.lift_eval_phase(phase, lo[static_cast<std::size_t>(i)]) -
                  delta - budget;
      img_hi[j] = fam.lift_eval_phase(phase, hi[static_cast<std::size_t>(i)]) +
                  delta + budget;
    }
    double worst = std::numeric_limits<double>::infinity();
    int worst_node = 0;
    for (int j = 0; j < n; ++j) {
      const std::size_t sj = static_cast<std::size_t>(j);
      // align the image interval with the target lift representative
      const double mid = 0.5 * (img_lo[sj] + img_hi[sj]);
      const double k = std::round(mid - strip.center[j]);
      img_lo[sj] -= k;
      img_hi[sj] -= k;
      const double slack = std::min(img_lo[sj] - (strip.center[j] - strip.radius[j]),
                                    (strip.center[j] + strip.radius[j]) - img_hi[sj]);
      if (slack < worst) {
        worst = slack;
        worst_node = j;
      }
    }
    if (!(worst > 0.0)) {
      std::ostringstream s;
      s << "containment failed at step " << step + 1 << ", node " << worst_node
        << " (slack=" << worst << ", budget=" << budget << ")";
      out.note = s.str();
      return out;
    }
    lo.swap(img_lo);
    hi.swap(img_hi);
  }
  out.witness = LockedWitness{delta, strip, steps};
  return out;
}

namespace {

struct BatteryResult {
  std::optional<UnlockedWitness> up;
  std::optional<UnlockedWitness> down;
  std::string notes;
};

// eps_list x n_list sweep, + before -, stopping at the first (eps, n) pair
// where either sign fires. stats at eps = 0 are memoized per n.
BatteryResult run_battery(const FiberFamily& fam, const BaseMap& map,
                          const Budget& budget) {
  BatteryResult result;
  std::map<long, DisplacementStats> stats0;
  std::ostringstream notes;
  for (double eps : budget.eps_list) {
    for (long n : budget.n_list) {
      auto it = stats0.find(n);
      if (it == stats0.end())
        it = stats0.emplace(n, displacement_bounds(fam, map, n, budget.grid, 0.0))
                 .first;
      const DisplacementStats& s0 = it->second;
      if (s0.margin_flagged()) {
        notes << "[n=" << n << " margin flagged] ";
        continue;
      }
      const DisplacementStats sUp =
          displacement_bounds(fam, map, n, budget.grid, eps);
      if (!sUp.margin_flagged()) {
        const double gap = sUp.m_lo - s0.m_hi - (sUp.margin + s0.margin);
        if (gap > 0.0)
          result.up = UnlockedWitness{eps, n, gap / static_cast<double>(n)};
      }
      const DisplacementStats sDown =
          displacement_bounds(fam, map, n, budget.grid, -eps);
      if (!sDown.margin_flagged()) {
        const double gap = s0.m_lo - sDown.m_hi - (sDown.margin + s0.margin);
        if (gap > 0.0)
          result.down = UnlockedWitness{-eps, n, gap / static_cast<double>(n)};
      }
      if (result.up || result.down) {
        result.notes = notes.str();
        return result;
      }
    }
  }
  result.notes = notes.str();
  return result;
}

}  // namespace

LockClassification classify(const FiberFamily& fam, const BaseMap& map,
                            const Budget& budget) {
  if (budget.n_list.empty() || budget.eps_list.empty() ||
      budget.radius_schedule.empty() || budget.delta_list.empty())
    throw std::invalid_argument("classify budget lists must be nonempty");

  LockClassification result;
  std::ostringstream diag;

  std::optional<LockedWitness> locked;
  if (rotation_circle_base(map)) {
    const Strip candidate =
        find_candidate_strip(fam, map, budget.strip_transient, budget.strip_nodes,
                             budget.radius_schedule.front());
    for (double r : budget.radius_schedule) {
      const Strip s = candidate.with_radius(r);
      for (double delta : budget.delta_list) {
        LockedOutcome lc = locked_certificate(fam, map, s, delta, budget.strip_steps);
        if (lc.witness) {
          locked = std::move(lc.witness);
          break;
        }
      }
      if (locked) break;
    }
    if (!locked) diag << "strip: no certificate over schedule; ";
  } else {
    diag << "strip: unsupported base (" << map.describe() << "); ";
  }

  if (locked && !budget.cross_check) {
    result.code = LockClassification::Code::Locked;
    result.locked = std::move(locked);
    return result;
  }

  const BatteryResult battery = run_battery(fam, map, budget);
  if (!battery.notes.empty()) diag << battery.notes;

  if (locked && (battery.up || battery.down)) {
    result.code = LockClassification::Code::Undecided;
    diag << "inconsistent: locked and unlocked certificates both fired";
    result.diagnostics = diag.str();
    return result;
  }
  if (locked) {
    result.code = LockClassification::Code::Locked;
    result.locked = std::move(locked);
    return result;
  }
  if (battery.up || battery.down) {
    if (battery.up && battery.down) {
      diag << "both signs fired: up(eps=" << battery.up->eps
           << " gap=" << battery.up->gap_per_step << ") down(eps="
           << battery.down->eps << " gap=" << battery.down->gap_per_step << ")";
    }
    if (battery.up) {
      result.code = LockClassification::Code::UnlockedUp;
      result.unlocked = battery.up;
    } else {
      result.code = LockClassification::Code::UnlockedDown;
      result.unlocked = battery.down;
    }
    result.diagnostics = diag.str();
    return result;
  }

  result.code = LockClassification::Code::Undecided;
  diag << "no certificate fired within budget";
  result.diagnostics = diag.str();
  return result;
}

double plateau_width(const std::function<FiberFamily(double)>& fam_builder,
                     const BaseMap& map, double tau0, const Budget& budget) {
  const auto is_locked = [&](double t) {
    return classify(fam_builder(t), map, budget).code ==
           LockClassification::Code::Locked;
  };
  if (!is_locked(tau0))
    throw std::invalid_argument("plateau_width requires tau0 to classify Locked");

  constexpr double kResolution = 1e-4;
  constexpr double kCap = 1.0;  // rho(tau + 1) = rho(tau) + 1, plateaus end before
  double width = 0.0;
  for (double sign : {+1.0, -1.0}) {
    double in = 0.0;          // largest offset known Locked
    double out = kResolution;  // candidate outside offset
    while (out < kCap && is_locked(tau0 + sign * out)) {
      in = out;
      out *= 2.0;
    }
    if (out >= kCap) {
      width += kCap;
      continue;
    }
    while (out - in > kResolution) {
      const double mid = 0.5 * (in + out);
      if (is_locked(tau0 + sign * mid))
        in = mid;
      else
        out = mid;
    }
    width += in;
  }
  return width;
}

}  // namespace tonguelock
