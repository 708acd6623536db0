#pragma once

#include <string>
#include <vector>

#include "tonguelock/scan.hpp"

namespace tonguelock {

// Config file / flag parse failure; names the offending key and, for file
// input, the 1-based line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string key, int line = 0)
      : std::runtime_error(message), key_(std::move(key)), line_(line) {}
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

// Flat `section.key=value` run configuration. Every field has a documented
// default except fiber.kind. parse_config applies file values over defaults
// and override flags over file values; unknown keys are hard errors.
struct RunConfig {
  // base section
  std::string base_kind = "rotation";  // rotation | skewshift | odometer
  std::vector<double> base_omega{0.6180339887498949};
  double base_alpha = 0.6180339887498949;
  std::vector<int> base_radices = std::vector<int>(32, 2);

  // fiber section
  std::string fiber_kind;  // arnold | pfamily | triglift (required)
  double fiber_tau = 0.0;
  double fiber_alpha = 0.5;
  double fiber_beta = 0.0;
  std::string fiber_q = "0; 1,0";    // cos(2 pi theta)
  std::string fiber_p = "0; 0,0.1";  // 0.1 sin(2 pi w)

  // command section
  long command_n = 4096;
  int command_grid_x = 64;
  int command_grid_y = 64;
  double command_eps = 0.0;
  int command_nodes = 4096;  // Simpson nodes for lyap --check-integral
  std::uint64_t command_seed = 1;
  int command_workers = 0;  // 0 = auto
  std::string command_out;
  bool command_json = false;
  bool command_check_integral = false;
  bool command_pgm = false;
  bool command_timings = false;

  // scan section
  double scan_tau_lo = 0.0, scan_tau_hi = 0.2;
  int scan_tau_count = 64;
  double scan_alpha_lo = 0.2, scan_alpha_hi = 0.8;
  int scan_alpha_count = 16;
  long scan_rho_n = 16384;

  // budget section
  std::vector<long> budget_n_list{512, 2048, 8192};
  std::vector<double> budget_eps_list{0.02, 0.01, 0.005, 0.002};
  int budget_grid_x = 64;
  int budget_grid_y = 64;
  int budget_strip_nodes = 256;
  int budget_strip_transient = 512;
  int budget_strip_steps = 2;
  std::vector<double> budget_radius_schedule{0.2, 0.1, 0.05, 0.03, 0.02, 0.01};
  std::vector<double> budget_delta_list{0.01, 0.005, 0.002, 0.001, 0.0005};
  bool budget_cross_check = false;

  // probe section
  double probe_radius = 0.1;
  int probe_trials = 32;
  int probe_iterations = 24;
  int probe_modes = 8;
  long probe_n = 256;
  int probe_grid_x = 32;
  int probe_grid_y = 64;

  bool operator==(const RunConfig&) const = default;

  BaseMap make_base() const;
  FiberFamily make_fiber() const;
  Budget make_budget() const;
  GridSpec make_grid() const;
  ScanConfig make_scan() const;
};

// text: config file contents; overrides: "section.key=value" flag strings
// (applied after the file, last one wins).
RunConfig parse_config(const std::string& text,
                       const std::vector<std::string>& overrides);

// Canonical text form; parse_config(format_config(c), {}) == c.
std::string format_config(const RunConfig& cfg);

}  // namespace tonguelock
