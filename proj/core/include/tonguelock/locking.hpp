#pragma once

#include <functional>
#include <optional>
#include <string>

#include "tonguelock/rotation.hpp"

namespace tonguelock {

// Fiberwise open strip over a uniform grid on a one-dimensional Rotation
// base: at node x_i the fiber interval is (center_i - radius_i,
// center_i + radius_i) mod 1. Radii stay below 0.5 so every interval is a
// proper subinterval of the circle; adjacent centers and radii may not jump
// by 0.25 or more (continuity guard).
struct Strip {
  std::vector<double> center;  // values in [0, 1)
  std::vector<double> radius;  // values in (0, 0.5)

  int nodes() const { return static_cast<int>(center.size()); }
  void validate() const;  // throws std::invalid_argument on a broken invariant
  Strip with_radius(double r) const;
};

struct LockedWitness {
  double delta = 0.0;  // certified shift bound: rho(F_e) = rho(F) for |e| <= delta
  Strip strip;
  int steps = 1;
};

struct UnlockedWitness {
  double eps = 0.0;
  long n = 0;
  double gap_per_step = 0.0;
};

struct LockClassification {
  enum class Code { Locked, UnlockedUp, UnlockedDown, Undecided };
  Code code = Code::Undecided;
  std::optional<LockedWitness> locked;
  std::optional<UnlockedWitness> unlocked;
  std::string diagnostics;
};

const char* to_string(LockClassification::Code code);

// Shared certificate-search budget. Classification walks the locked radius
// and delta schedules first (the locked witness is reusable by plateau
// scans), then the eps x n battery, + before -, first success winning.
struct Budget {
  std::vector<long> n_list{512, 2048, 8192};
  std::vector<double> eps_list{0.02, 0.01, 0.005, 0.002};
  GridSpec grid{};
  int strip_nodes = 256;
  int strip_transient = 512;
  int strip_steps = 2;
  std::vector<double> radius_schedule{0.2, 0.1, 0.05, 0.03, 0.02, 0.01};
  std::vector<double> delta_list{0.01, 0.005, 0.002, 0.001, 0.0005};
  // When set, a firing locked certificate no longer short-circuits the
  // unlocked battery; a double fire is reported as an inconsistency.
  bool cross_check = false;
};

struct UnlockedOutcome {
  std::optional<double> gap_per_step;
  std::string note;
};

// Displacement-gap certificate: for eps > 0 a strict gap
// statsE.m_lo - margin > stats0.m_hi + margin certifies rho(F_eps) > rho(F)
// (gap/n per step); symmetric for eps < 0. Margin-flagged stats always
// yield absent.
UnlockedOutcome unlocked_certificate(const FiberFamily& fam, const BaseMap& map,
                                     double eps, long n, GridSpec grid);

// Pushes the constant graph w == 0.5 forward `transient` steps with
// nearest-node resampling and returns it with uniform radius0. A candidate
// only; certification is separate.
Strip find_candidate_strip(const FiberFamily& fam, const BaseMap& map,
                           int transient, int x_nodes, double radius0);

struct LockedOutcome {
  std::optional<LockedWitness> witness;
  std::string note;
};

// Invariant-strip certificate: every node interval, shifted by each
// eps in {-delta, +delta} and inflated by the grid-interpolation budget
// mesh * (base_lipschitz + graph slope), must land strictly inside the
// strip at the node nearest the base image, for `steps` iterations of the
// propagated strip. Success certifies mode-locking with plateau >= delta.
LockedOutcome locked_certificate(const FiberFamily& fam, const BaseMap& map,
                                 const Strip& strip, double delta, int steps);

LockClassification classify(const FiberFamily& fam, const BaseMap& map,
                            const Budget& budget);

// Bisection (resolution 1e-4) on both sides of tau0 for the largest offset
// still classifying Locked; returns the two-sided plateau width. tau0 itself
// must classify Locked.
double plateau_width(const std::function<FiberFamily(double)>& fam_builder,
                     const BaseMap& map, double tau0, const Budget& budget);

}  // namespace tonguelock
