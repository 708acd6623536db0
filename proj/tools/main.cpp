#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tonguelock/config.hpp"
#include "tonguelock/parallel.hpp"
#include "tonguelock/selftest.hpp"
#include "tonguelock/version.hpp"

namespace {

using namespace tonguelock;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitNotFound = 4;

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> sets;
  // typed convenience flags, applied after --set
  std::vector<std::string> typed;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "config file (section.key=value lines)");
  cmd->add_option("--set", flags.sets, "override a config key, e.g. --set fiber.tau=0.1");

  const auto typed = [&flags](const std::string& key) {
    return [&flags, key](const std::string& v) { flags.typed.push_back(key + "=" + v); };
  };
  cmd->add_option_function<std::string>("--kind", typed("fiber.kind"), "fiber kind");
  cmd->add_option_function<std::string>("--tau", typed("fiber.tau"), "fiber tau");
  cmd->add_option_function<std::string>("--alpha", typed("fiber.alpha"), "fiber alpha");
  cmd->add_option_function<std::string>("--beta", typed("fiber.beta"), "fiber beta");
  cmd->add_option_function<std::string>("--q", typed("fiber.q"), "forcing coefficients");
  cmd->add_option_function<std::string>("--n", typed("command.n"), "orbit length");
  cmd->add_option_function<std::string>("--grid-x", typed("command.grid_x"), "base grid nodes");
  cmd->add_option_function<std::string>("--grid-y", typed("command.grid_y"), "fiber grid nodes");
  cmd->add_option_function<std::string>("--eps", typed("command.eps"), "lift shift");
  cmd->add_option_function<std::string>("--nodes", typed("command.nodes"), "Simpson nodes");
  cmd->add_option_function<std::string>("--seed", typed("command.seed"), "root seed");
  cmd->add_option_function<std::string>("--workers", typed("command.workers"), "worker threads");
  cmd->add_option_function<std::string>("--out", typed("command.out"), "output path base");
  cmd->add_flag_function("--json", [&flags](std::int64_t) {
    flags.typed.push_back("command.json=true");
  }, "JSON output");
  cmd->add_flag_function("--pgm", [&flags](std::int64_t) {
    flags.typed.push_back("command.pgm=true");
  }, "also write a P2 image (scan)");
  cmd->add_flag_function("--timings", [&flags](std::int64_t) {
    flags.typed.push_back("command.timings=true");
  }, "include wall-clock timings in JSON exports");
  cmd->add_flag_function("--check-integral", [&flags](std::int64_t) {
    flags.typed.push_back("command.check_integral=true");
  }, "also run the derivative-integral check (lyap)");
}

RunConfig load_config(const CommonFlags& flags) {
  std::string text;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw std::runtime_error("cannot read config file " + flags.config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  std::vector<std::string> overrides = flags.sets;
  overrides.insert(overrides.end(), flags.typed.begin(), flags.typed.end());
  RunConfig cfg = parse_config(text, overrides);
  if (cfg.command_workers > 0 && std::getenv("TONGUELOCK_THREADS") == nullptr)
    par::set_max_workers(cfg.command_workers);
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("short write to " + path);
}

int run_rho(const RunConfig& cfg) {
  const RotationEnclosure enc =
      rotation_enclosure(cfg.make_fiber(), cfg.make_base(), cfg.command_n,
                         cfg.make_grid(), cfg.command_eps);
  if (cfg.command_json) {
    nlohmann::ordered_json j;
    j["lo"] = enc.lo;
    j["hi"] = enc.hi;
    j["n"] = enc.n;
    j["rigor"] = to_string(enc.rigor);
    j["flagged"] = enc.flagged;
    j["eps"] = cfg.command_eps;
    j["width"] = enc.width();
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%.9g %.9g %ld %s%s\n", enc.lo, enc.hi, enc.n, to_string(enc.rigor),
                enc.flagged ? " flagged" : "");
  }
  return kExitOk;
}

int run_classify(const RunConfig& cfg) {
  const LockClassification cls =
      classify(cfg.make_fiber(), cfg.make_base(), cfg.make_budget());
  switch (cls.code) {
    case LockClassification::Code::Locked:
      std::printf("LOCKED delta=%.6g steps=%d nodes=%d\n", cls.locked->delta,
                  cls.locked->steps, cls.locked->strip.nodes());
      return kExitOk;
    case LockClassification::Code::UnlockedUp:
    case LockClassification::Code::UnlockedDown:
      std::printf("%s eps=%.6g n=%ld gap_per_step=%.6g\n", to_string(cls.code),
                  cls.unlocked->eps, cls.unlocked->n, cls.unlocked->gap_per_step);
      return kExitOk;
    case LockClassification::Code::Undecided:
      std::printf("UNDECIDED %s\n", cls.diagnostics.c_str());
      return kExitUndecided;
  }
  return kExitUndecided;
}

int run_lyap(const RunConfig& cfg) {
  const BaseMap base = cfg.make_base();
  const FiberFamily fam = cfg.make_fiber();
  const ExponentEstimate est =
      exponent_bounds(fam, base, cfg.command_n, cfg.make_grid());
  double integral = 0.0;
  if (cfg.command_check_integral)
    integral = derivative_integral_check(fam, base, base.start(),
                                         std::min<long>(cfg.command_n, 8),
                                         cfg.command_nodes);
  if (cfg.command_json) {
    nlohmann::ordered_json j;
    j["lower_L_minus"] = est.lower_L_minus;
    j["upper_L_plus"] = est.upper_L_plus;
    j["margin"] = est.margin;
    j["rigor"] = to_string(est.rigor);
    j["n"] = est.n;
    if (cfg.command_check_integral) j["integral_check"] = integral;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%.9g %.9g %.9g %s\n", est.lower_L_minus, est.upper_L_plus,
                est.margin, to_string(est.rigor));
    if (cfg.command_check_integral)
      std::printf("integral %.12g (n=%ld nodes=%d)\n", integral,
                  std::min<long>(cfg.command_n, 8), cfg.command_nodes);
  }
  return kExitOk;
}

int run_scan(const RunConfig& cfg) {
  const TongueGrid grid = tongue_scan(cfg.make_scan());
  const std::string out = cfg.command_out.empty() ? "scan" : cfg.command_out;
  write_file(out + ".csv", to_csv(grid));
  write_file(out + ".json", to_json_meta(grid, cfg.command_timings));
  if (cfg.command_pgm) write_file(out + ".pgm", to_pgm(grid));
  const Fractions f = locked_fraction(grid);
  std::printf("cells=%zu locked=%.4f undecided=%.4f out=%s.csv\n",
              grid.cells.size(), f.locked, f.undecided, out.c_str());
  return kExitOk;
}

int run_probe_lock(const RunConfig& cfg) {
  if (cfg.fiber_kind != "arnold")
    throw std::runtime_error("probe-lock requires fiber.kind=arnold");
  const BaseMap base = cfg.make_base();
  const TrigPoly q0 = TrigPoly::parse(cfg.fiber_q);
  const LockSearchResult r =
      lock_search(base, cfg.fiber_tau, cfg.fiber_alpha, cfg.fiber_beta, q0,
                  cfg.probe_radius, cfg.probe_trials, cfg.command_seed,
                  cfg.make_budget(), cfg.probe_modes);
  nlohmann::ordered_json j;
  j["found"] = r.q.has_value();
  j["success_trial"] = r.success_trial;
  j["trials_run"] = r.trials_run;
  j["near_misses"] = r.near_misses;
  if (r.q) j["q"] = r.q->format();
  if (r.witness) {
    j["witness"]["delta"] = r.witness->delta;
    j["witness"]["steps"] = r.witness->steps;
    j["witness"]["nodes"] = r.witness->strip.nodes();
  }
  if (!r.note.empty()) j["note"] = r.note;
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!cfg.command_out.empty()) write_file(cfg.command_out + ".json", text);
  return r.q ? kExitOk : kExitNotFound;
}

int run_probe_exponent(const RunConfig& cfg) {
  const BaseMap base = cfg.make_base();
  const FiberFamily fam0 = cfg.make_fiber();
  const Budget budget = cfg.make_budget();
  const LockClassification cls0 = classify(fam0, base, budget);
  if (cls0.code != LockClassification::Code::UnlockedUp &&
      cls0.code != LockClassification::Code::UnlockedDown) {
    std::printf("probe-exponent: starting family classifies %s, need Unlocked\n",
                to_string(cls0.code));
    return kExitUndecided;
  }
  const ExponentMinimizeResult r = exponent_minimize(
      base, fam0, cfg.probe_radius, cfg.probe_iterations, cfg.command_seed,
      GridSpec{cfg.probe_grid_x, cfg.probe_grid_y}, cfg.probe_n, budget,
      cfg.probe_modes);
  nlohmann::ordered_json j;
  j["initial_objective"] =
      std::max(r.initial.upper_L_plus, -r.initial.lower_L_minus);
  j["final_objective"] =
      r.trace.empty() ? j["initial_objective"].get<double>() : r.trace.back();
  j["trace"] = r.trace;
  j["accepted"] = r.accepted;
  j["iterations"] = r.iterations;
  j["final_class"] = to_string(r.final_code);
  j["final_q"] = r.family.forcing().format();
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!cfg.command_out.empty()) write_file(cfg.command_out + ".json", text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tonguelock: rotation numbers, mode-locking certificates and "
               "Arnold-tongue scans for dynamically forced circle maps"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonFlags rho_f, classify_f, lyap_f, scan_f, lock_f, expo_f;
  CLI::App* rho = app.add_subcommand("rho", "rotation-number enclosure");
  add_common(rho, rho_f);
  CLI::App* cls = app.add_subcommand("classify", "mode-locking classification");
  add_common(cls, classify_f);
  CLI::App* lyap = app.add_subcommand("lyap", "extremal fiberwise Lyapunov bounds");
  add_common(lyap, lyap_f);
  CLI::App* scan = app.add_subcommand("scan", "(tau, alpha) tongue scan");
  add_common(scan, scan_f);
  CLI::App* plock = app.add_subcommand("probe-lock", "perturbation search for locking");
  add_common(plock, lock_f);
  CLI::App* pexp = app.add_subcommand("probe-exponent", "exponent minimization probe");
  add_common(pexp, expo_f);
  CLI::App* self = app.add_subcommand("selftest", "run the acceptance checklist");

  CLI11_PARSE(app, argc, argv);

  try {
    if (self->parsed()) {
      const auto results = tonguelock::selftest::run_all(std::cout);
      return tonguelock::selftest::all_passed(results) ? kExitOk : kExitUsage;
    }
    if (rho->parsed()) return run_rho(load_config(rho_f));
    if (cls->parsed()) return run_classify(load_config(classify_f));
    if (lyap->parsed()) return run_lyap(load_config(lyap_f));
    if (scan->parsed()) return run_scan(load_config(scan_f));
    if (plock->parsed()) return run_probe_lock(load_config(lock_f));
    if (pexp->parsed()) return run_probe_exponent(load_config(expo_f));
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitUsage;
}
