#include "tonguelock/scan.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "tonguelock/parallel.hpp"
#include "tonguelock/rng.hpp"

namespace tonguelock {

const char* cell_label(CellCode code) {
  switch (code) {
    case CellCode::Locked: return "L";
    case CellCode::UnlockedUp: return "U+";
    case CellCode::UnlockedDown: return "U-";
    case CellCode::Undecided: return "?";
  }
  return "?";
}

double ScanConfig::tau_at(int it) const {
  if (tau_count == 1) return tau_lo;
  return tau_lo + (tau_hi - tau_lo) * static_cast<double>(it) /
                      static_cast<double>(tau_count - 1);
}

double ScanConfig::alpha_at(int ia) const {
  if (alpha_count == 1) return alpha_lo;
  return alpha_lo + (alpha_hi - alpha_lo) * static_cast<double>(ia) /
                        static_cast<double>(alpha_count - 1);
}

void ScanConfig::validate() const {
  if (tau_count < 2 || alpha_count < 2)
    throw std::invalid_argument("scan needs >= 2 nodes per parameter axis");
  if (!(alpha_lo > 0.0 && alpha_hi < 1.0 && alpha_lo <= alpha_hi))
    throw std::invalid_argument("scan alpha range must lie strictly inside (0, 1)");
  if (!(tau_lo <= tau_hi)) throw std::invalid_argument("scan tau range inverted");
  if (rho_n < 1) throw std::invalid_argument("scan rho_n must be >= 1");
}

TongueGrid tongue_scan(const ScanConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  TongueGrid grid;
  grid.config = cfg;
  const std::size_t total =
      static_cast<std::size_t>(cfg.tau_count) * static_cast<std::size_t>(cfg.alpha_count);
  grid.cells.assign(total, CellCode::Undecided);
  grid.rho_est.assign(total, 0.0);

  par::parallel_for(
      static_cast<std::int64_t>(total),
      [&](std::int64_t cell) {
        const int ia = static_cast<int>(cell / cfg.tau_count);
        const int it = static_cast<int>(cell % cfg.tau_count);
        const FiberFamily fam =
            FiberFamily::arnold(cfg.tau_at(it), cfg.alpha_at(ia), cfg.beta, cfg.q);

        CellCode code = CellCode::Undecided;
        const LockClassification cls = classify(fam, cfg.base, cfg.budget);
        switch (cls.code) {
          case LockClassification::Code::Locked: code = CellCode::Locked; break;
          case LockClassification::Code::UnlockedUp:
            code = CellCode::UnlockedUp;
            break;
          case LockClassification::Code::UnlockedDown:
            code = CellCode::UnlockedDown;
            break;
          case LockClassification::Code::Undecided:
            code = CellCode::Undecided;
            break;
        }
        grid.cells[static_cast<std::size_t>(cell)] = code;

        SplitMix64 rng = stream_for(cfg.seed, static_cast<std::uint64_t>(cell));
        BasePoint x0 = cfg.base.sample(rng);
        const double y0 = rng.next_double();
        grid.rho_est[static_cast<std::size_t>(cell)] =
            rho_orbit_estimate(fam, cfg.base, x0, y0, cfg.rho_n);
      },
      cfg.workers);

  grid.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return grid;
}

Fractions locked_fraction(const TongueGrid& grid) {
  Fractions f;
  if (grid.cells.empty()) return f;
  std::size_t locked = 0, undecided = 0;
  for (CellCode c : grid.cells) {
    if (c == CellCode::Locked) ++locked;
    if (c == CellCode::Undecided) ++undecided;
  }
  f.locked = static_cast<double>(locked) / static_cast<double>(grid.cells.size());
  f.undecided =
      static_cast<double>(undecided) / static_cast<double>(grid.cells.size());
  return f;
}

namespace {

TrigPoly perturbed(const TrigPoly& q0, double radius, int modes, SplitMix64& rng) {
  TrigPoly q = q0;
  q.ensure_modes(modes);
  for (int idx = 0; idx < 1 + 2 * modes; ++idx)
    q.set_coefficient(idx, q.coefficient(idx) + rng.next_in(-radius, radius));
  q.trim();
  return q;
}

}  // namespace

LockSearchResult lock_search(const BaseMap& base, double tau, double alpha,
                             double beta, const TrigPoly& q0, double radius,
                             int trials, std::uint64_t seed, const Budget& budget,
                             int modes) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("lock_search needs alpha in (0, 1)");
  if (trials < 1) throw std::invalid_argument("lock_search needs trials >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("lock_search needs radius > 0");

  LockSearchResult result;
  std::ostringstream note;
  for (int t = 0; t < trials; ++t) {
    ++result.trials_run;
    TrigPoly q = q0;
    if (t > 0) {
      SplitMix64 rng = stream_for(seed, static_cast<std::uint64_t>(t));
      q = perturbed(q0, radius, modes, rng);
    }
    const FiberFamily fam = FiberFamily::arnold(tau, alpha, beta, q);
    const LockClassification cls = classify(fam, base, budget);
    if (cls.code != LockClassification::Code::Locked) {
      if (cls.code == LockClassification::Code::Undecided) ++result.near_misses;
      continue;
    }
    // Re-verify before reporting: fresh classify plus a direct re-check of
    // the stored witness strip.
    const LockClassification again = classify(fam, base, budget);
    if (again.code != LockClassification::Code::Locked || !again.locked) {
      note << "trial " << t << " failed classify re-verification; ";
      continue;
    }
    const LockedOutcome direct =
        locked_certificate(fam, base, again.locked->strip, again.locked->delta,
                           again.locked->steps);
    if (!direct.witness) {
      note << "trial " << t << " witness failed direct re-certification; ";
      continue;
    }
    result.q = q;
    result.witness = again.locked;
    result.success_trial = t;
    result.note = note.str();
    return result;
  }
  note << "no locking perturbation in " << trials << " trials";
  result.note = note.str();
  return result;
}

ExponentMinimizeResult exponent_minimize(const BaseMap& base,
                                         const FiberFamily& fam0, double radius,
                                         int iterations, std::uint64_t seed,
                                         GridSpec grid, long n,
                                         const Budget& budget, int modes) {
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
  const LockClassification cls0 = classify(fam0, base, budget);
  if (cls0.code != LockClassification::Code::UnlockedUp &&
      cls0.code != LockClassification::Code::UnlockedDown)
    throw std::invalid_argument(
        "exponent_minimize requires fam0 to classify Unlocked under the budget");

  const auto objective = [&](const FiberFamily& f) {
    const ExponentEstimate est = exponent_bounds(f, base, n, grid);
    return std::make_pair(std::max(est.upper_L_plus, -est.lower_L_minus), est);
  };

  ExponentMinimizeResult result;
  result.family = fam0;
  auto [best, est0] = objective(fam0);
  result.initial = est0;
  result.final_code = cls0.code;

  for (int it = 0; it < iterations; ++it) {
    ++result.iterations;
    SplitMix64 rng = stream_for(seed, static_cast<std::uint64_t>(it));
    TrigPoly q = perturbed(result.family.forcing(), radius, modes, rng);
    FiberFamily candidate = result.family.with_forcing(std::move(q));
    const LockClassification cls = classify(candidate, base, budget);
    if (cls.code != LockClassification::Code::UnlockedUp &&
        cls.code != LockClassification::Code::UnlockedDown)
      continue;
    auto [obj, est] = objective(candidate);
    if (obj < best) {
      best = obj;
      result.family = std::move(candidate);
      result.trace.push_back(obj);
      result.estimates.push_back(est);
      result.final_code = cls.code;
      ++result.accepted;
    }
  }
  return result;
}

}  // namespace tonguelock
