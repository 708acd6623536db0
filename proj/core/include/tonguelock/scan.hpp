#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tonguelock/locking.hpp"
#include "tonguelock/lyapunov.hpp"

namespace tonguelock {

enum class CellCode : std::uint8_t {
  Locked = 0,
  UnlockedUp = 1,
  UnlockedDown = 2,
  Undecided = 3,
};

const char* cell_label(CellCode code);  // "L", "U+", "U-", "?"

// (tau, alpha) scan configuration. Parameter nodes are inclusive linspace
// endpoints; cells classify independently under the shared budget, and all
// per-cell randomness derives from seed via counter-based streams so results
// never depend on worker count.
struct ScanConfig {
  double tau_lo = 0.0, tau_hi = 0.2;
  int tau_count = 64;
  double alpha_lo = 0.2, alpha_hi = 0.8;
  int alpha_count = 16;
  double beta = 0.0;
  TrigPoly q = TrigPoly::cosine();
  BaseMap base = BaseMap::rotation({0.6180339887498949});
  Budget budget{};
  std::uint64_t seed = 1;
  int workers = 0;      // 0 = library default
  long rho_n = 16384;   // orbit length for the per-cell rho estimate

  double tau_at(int it) const;
  double alpha_at(int ia) const;
  void validate() const;
};

struct TongueGrid {
  ScanConfig config;
  std::vector<CellCode> cells;    // alpha-major: [ia * tau_count + it]
  std::vector<double> rho_est;
  double elapsed_seconds = 0.0;   // not exported unless explicitly requested

  CellCode at(int ia, int it) const {
    return cells[static_cast<std::size_t>(ia) * config.tau_count + it];
  }
};

TongueGrid tongue_scan(const ScanConfig& cfg);

struct Fractions {
  double locked = 0.0;
  double undecided = 0.0;
};
Fractions locked_fraction(const TongueGrid& grid);

// Exports. CSV rows are alpha-major matching the cell layout; the PGM is a
// P2 image (maxval 3) with pixel values matching CellCode. The JSON sidecar
// echoes the configuration; wall-clock timings are opt-in because default
// exports are byte-identical across repeat runs and worker counts.
std::string to_csv(const TongueGrid& grid);
std::string to_pgm(const TongueGrid& grid);
std::string to_json_meta(const TongueGrid& grid, bool include_timings = false);

// Seeded perturbation search for a locking forcing function near q0:
// trial 0 is q0 itself, later trials add uniform coefficient noise bounded
// by `radius` on modes 0..modes. A hit must re-verify: a fresh classify of
// the perturbed family must return Locked and the stored witness strip must
// re-certify directly.
struct LockSearchResult {
  std::optional<TrigPoly> q;
  std::optional<LockedWitness> witness;
  int success_trial = -1;
  int trials_run = 0;
  int near_misses = 0;  // trials whose strip search found no certificate
  std::string note;
};

LockSearchResult lock_search(const BaseMap& base, double tau, double alpha,
                             double beta, const TrigPoly& q0, double radius,
                             int trials, std::uint64_t seed, const Budget& budget,
                             int modes = 8);

// Seeded hill-descent on max(upper_L_plus, -lower_L_minus) over forcing
// coefficients; proposals are accepted only when they stay classified
// Unlocked and strictly reduce the objective, so the trace is monotone.
struct ExponentMinimizeResult {
  FiberFamily family;
  ExponentEstimate initial;
  std::vector<double> trace;               // accepted objective values
  std::vector<ExponentEstimate> estimates; // estimates matching the trace
  int accepted = 0;
  int iterations = 0;
  LockClassification::Code final_code = LockClassification::Code::Undecided;
};

ExponentMinimizeResult exponent_minimize(const BaseMap& base,
                                         const FiberFamily& fam0, double radius,
                                         int iterations, std::uint64_t seed,
                                         GridSpec grid, long n,
                                         const Budget& budget, int modes = 8);

}  // namespace tonguelock
