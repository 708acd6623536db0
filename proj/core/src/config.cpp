#include "tonguelock/config.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

namespace tonguelock {

namespace {

[[noreturn]] void fail(const std::string& key, int line, const std::string& what) {
  std::ostringstream s;
  s << "config error";
  if (line > 0) s << " (line " << line << ")";
  s << ": " << key << ": " << what;
  throw ConfigError(s.str(), key, line);
}

double to_double(const std::string& key, int line, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    fail(key, line, "malformed number '" + v + "'");
  }
  if (pos != v.size()) fail(key, line, "malformed number '" + v + "'");
  return out;
}

long to_long(const std::string& key, int line, const std::string& v) {
  std::size_t pos = 0;
  long out = 0;
  try {
    out = std::stol(v, &pos);
  } catch (const std::exception&) {
    fail(key, line, "malformed integer '" + v + "'");
  }
  if (pos != v.size()) fail(key, line, "malformed integer '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, int line, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(key, line, "expected true/false, got '" + v + "'");
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> to_doubles(const std::string& key, int line, const std::string& v) {
  std::vector<double> out;
  for (const auto& tok : split(v, ',')) out.push_back(to_double(key, line, tok));
  return out;
}

std::vector<long> to_longs(const std::string& key, int line, const std::string& v) {
  std::vector<long> out;
  for (const auto& tok : split(v, ',')) out.push_back(to_long(key, line, tok));
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::ostringstream s;
  char buf[48];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    s << (i ? "," : "") << buf;
  }
  return s.str();
}

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string join_ints(const std::vector<T>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

using Setter = std::function<void(RunConfig&, const std::string& key, int line,
                                  const std::string& value)>;

const std::map<std::string, Setter>& schema() {
  static const std::map<std::string, Setter> s = [] {
    std::map<std::string, Setter> m;
    m["base.kind"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      if (v != "rotation" && v != "skewshift" && v != "odometer")
        fail(k, l, "must be rotation, skewshift or odometer");
      c.base_kind = v;
    };
    m["base.omega"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.base_omega = to_doubles(k, l, v);
      if (c.base_omega.empty()) fail(k, l, "needs >= 1 frequency");
    };
    m["base.alpha"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.base_alpha = to_double(k, l, v);
    };
    m["base.radices"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.base_radices.clear();
      for (long r : to_longs(k, l, v)) {
        if (r < 2) fail(k, l, "radices must be >= 2");
        c.base_radices.push_back(static_cast<int>(r));
      }
      if (c.base_radices.empty()) fail(k, l, "needs >= 1 radix");
    };
    m["fiber.kind"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      if (v != "arnold" && v != "pfamily" && v != "triglift")
        fail(k, l, "must be arnold, pfamily or triglift");
      c.fiber_kind = v;
    };
    m["fiber.tau"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.fiber_tau = to_double(k, l, v);
    };
    m["fiber.alpha"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      const double a = to_double(k, l, v);
      if (a < 0.0 || a >= 1.0) fail(k, l, "must lie in [0, 1)");
      c.fiber_alpha = a;
    };
    m["fiber.beta"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.fiber_beta = to_double(k, l, v);
    };
    m["fiber.q"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      try {
        TrigPoly::parse(v);
      } catch (const std::exception& e) {
        fail(k, l, e.what());
      }
      c.fiber_q = v;
    };
    m["fiber.p"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      try {
        TrigPoly::parse(v);
      } catch (const std::exception& e) {
        fail(k, l, e.what());
      }
      c.fiber_p = v;
    };
    m["command.n"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.command_n = to_long(k, l, v);
      if (c.command_n < 1) fail(k, l, "must be >= 1");
    };
    m["command.grid_x"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.command_grid_x = static_cast<int>(to_long(k, l, v));
      if (c.command_grid_x < 2) fail(k, l, "must be >= 2");
    };
    m["command.grid_y"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.command_grid_y = static_cast<int>(to_long(k, l, v));
      if (c.command_grid_y < 2) fail(k, l, "must be >= 2");
    };
    m["command.eps"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.command_eps = to_double(k, l, v);
    };
    m["command.nodes"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.command_nodes = static_cast<int>(to_long(k, l, v));
      if (c.command_nodes < 8 || c.command_nodes % 2 != 0)
        fail(k, l, "Simpson nodes must be even and >= 8");
    };
    m["command.seed"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.command_seed = static_cast<std::uint64_t>(to_long(k, l, v));
    };
    m["command.workers"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.command_workers = static_cast<int>(to_long(k, l, v));
      if (c.command_workers < 0) fail(k, l, "must be >= 0");
    };
    m["command.out"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      if (!v.empty()) {
        namespace fs = std::filesystem;
        fs::path dir = fs::path(v).parent_path();
        if (dir.empty()) dir = ".";
        if (!fs::is_directory(dir))
          fail(k, l, "output directory '" + dir.string() + "' does not exist");
        if (::access(dir.c_str(), W_OK) != 0)
          fail(k, l, "output directory '" + dir.string() + "' is not writable");
      }
      c.command_out = v;
    };
    m["command.json"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.command_json = to_bool(k, l, v);
    };
    m["command.check_integral"] = [](RunConfig& c, const std::string& k, int l,
                                     const std::string& v) {
      c.command_check_integral = to_bool(k, l, v);
    };
    m["command.pgm"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.command_pgm = to_bool(k, l, v);
    };
    m["command.timings"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.command_timings = to_bool(k, l, v);
    };
    m["scan.tau_lo"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.scan_tau_lo = to_double(k, l, v);
    };
    m["scan.tau_hi"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.scan_tau_hi = to_double(k, l, v);
    };
    m["scan.tau_count"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.scan_tau_count = static_cast<int>(to_long(k, l, v));
      if (c.scan_tau_count < 2) fail(k, l, "must be >= 2");
    };
    m["scan.alpha_lo"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      const double a = to_double(k, l, v);
      if (a <= 0.0 || a >= 1.0) fail(k, l, "must lie strictly in (0, 1)");
      c.scan_alpha_lo = a;
    };
    m["scan.alpha_hi"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      const double a = to_double(k, l, v);
      if (a <= 0.0 || a >= 1.0) fail(k, l, "must lie strictly in (0, 1)");
      c.scan_alpha_hi = a;
    };
    m["scan.alpha_count"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.scan_alpha_count = static_cast<int>(to_long(k, l, v));
      if (c.scan_alpha_count < 2) fail(k, l, "must be >= 2");
    };
    m["scan.rho_n"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.scan_rho_n = to_long(k, l, v);
      if (c.scan_rho_n < 1) fail(k, l, "must be >= 1");
    };
    m["budget.n_list"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.budget_n_list = to_longs(k, l, v);
      if (c.budget_n_list.empty()) fail(k, l, "needs >= 1 entry");
      for (long n : c.budget_n_list)
        if (n < 2) fail(k, l, "entries must be >= 2");
    };
    m["budget.eps_list"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.budget_eps_list = to_doubles(k, l, v);
      if (c.budget_eps_list.empty()) fail(k, l, "needs >= 1 entry");
      for (double e : c.budget_eps_list)
        if (e <= 0.0) fail(k, l, "entries must be > 0");
    };
    m["budget.grid_x"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.budget_grid_x = static_cast<int>(to_long(k, l, v));
      if (c.budget_grid_x < 2) fail(k, l, "must be >= 2");
    };
    m["budget.grid_y"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.budget_grid_y = static_cast<int>(to_long(k, l, v));
      if (c.budget_grid_y < 2) fail(k, l, "must be >= 2");
    };
    m["budget.strip_nodes"] = [](RunConfig& c, const std::string& k, int l,
                                 const std::string& v) {
      c.budget_strip_nodes = static_cast<int>(to_long(k, l, v));
      if (c.budget_strip_nodes < 2) fail(k, l, "must be >= 2");
    };
    m["budget.strip_transient"] = [](RunConfig& c, const std::string& k, int l,
                                     const std::string& v) {
      c.budget_strip_transient = static_cast<int>(to_long(k, l, v));
      if (c.budget_strip_transient < 0) fail(k, l, "must be >= 0");
    };
    m["budget.strip_steps"] = [](RunConfig& c, const std::string& k, int l,
                                 const std::string& v) {
      c.budget_strip_steps = static_cast<int>(to_long(k, l, v));
      if (c.budget_strip_steps < 1) fail(k, l, "must be >= 1");
    };
    m["budget.radius_schedule"] = [](RunConfig& c, const std::string& k, int l,
                                     const std::string& v) {
      c.budget_radius_schedule = to_doubles(k, l, v);
      if (c.budget_radius_schedule.empty()) fail(k, l, "needs >= 1 entry");
      for (double r : c.budget_radius_schedule)
        if (r <= 0.0 || r >= 0.5) fail(k, l, "entries must lie in (0, 0.5)");
    };
    m["budget.delta_list"] = [](RunConfig& c, const std::string& k, int l,
                                const std::string& v) {
      c.budget_delta_list = to_doubles(k, l, v);
      if (c.budget_delta_list.empty()) fail(k, l, "needs >= 1 entry");
      for (double d : c.budget_delta_list)
        if (d <= 0.0) fail(k, l, "entries must be > 0");
    };
    m["budget.cross_check"] = [](RunConfig& c, const std::string& k, int l,
                                 const std::string& v) {
      c.budget_cross_check = to_bool(k, l, v);
    };
    m["probe.radius"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.probe_radius = to_double(k, l, v);
      if (c.probe_radius <= 0.0) fail(k, l, "must be > 0");
    };
    m["probe.trials"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.probe_trials = static_cast<int>(to_long(k, l, v));
      if (c.probe_trials < 1) fail(k, l, "must be >= 1");
    };
    m["probe.iterations"] = [](RunConfig& c, const std::string& k, int l,
                               const std::string& v) {
      c.probe_iterations = static_cast<int>(to_long(k, l, v));
      if (c.probe_iterations < 0) fail(k, l, "must be >= 0");
    };
    m["probe.modes"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.probe_modes = static_cast<int>(to_long(k, l, v));
      if (c.probe_modes < 0) fail(k, l, "must be >= 0");
    };
    m["probe.n"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.probe_n = to_long(k, l, v);
      if (c.probe_n < 1) fail(k, l, "must be >= 1");
    };
    m["probe.grid_x"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.probe_grid_x = static_cast<int>(to_long(k, l, v));
      if (c.probe_grid_x < 2) fail(k, l, "must be >= 2");
    };
    m["probe.grid_y"] = [](RunConfig& c, const std::string& k, int l, const std::string& v) {
      c.probe_grid_y = static_cast<int>(to_long(k, l, v));
      if (c.probe_grid_y < 2) fail(k, l, "must be >= 2");
    };
    return m;
  }();
  return s;
}

void apply_pair(RunConfig& cfg, const std::string& key, const std::string& value,
                int line) {
  auto it = schema().find(key);
  if (it == schema().end()) fail(key, line, "unknown key");
  it->second(cfg, key, line, value);
}

std::string strip_ws(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

RunConfig parse_config(const std::string& text,
                       const std::vector<std::string>& overrides) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = strip_ws(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line, line_no, "expected key=value");
    const std::string key = strip_ws(line.substr(0, eq));
    const std::string value = strip_ws(line.substr(eq + 1));
    apply_pair(cfg, key, value, line_no);
  }
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) fail(ov, 0, "expected key=value");
    apply_pair(cfg, strip_ws(ov.substr(0, eq)), strip_ws(ov.substr(eq + 1)), 0);
  }
  if (cfg.fiber_kind.empty())
    fail("fiber.kind", 0, "required (arnold, pfamily or triglift)");
  return cfg;
}

std::string format_config(const RunConfig& c) {
  std::ostringstream out;
  out << "base.kind=" << c.base_kind << '\n';
  out << "base.omega=" << join_doubles(c.base_omega) << '\n';
  out << "base.alpha=" << fmt_double(c.base_alpha) << '\n';
  out << "base.radices=" << join_ints(c.base_radices) << '\n';
  out << "fiber.kind=" << c.fiber_kind << '\n';
  out << "fiber.tau=" << fmt_double(c.fiber_tau) << '\n';
  out << "fiber.alpha=" << fmt_double(c.fiber_alpha) << '\n';
  out << "fiber.beta=" << fmt_double(c.fiber_beta) << '\n';
  out << "fiber.q=" << c.fiber_q << '\n';
  out << "fiber.p=" << c.fiber_p << '\n';
  out << "command.n=" << c.command_n << '\n';
  out << "command.grid_x=" << c.command_grid_x << '\n';
  out << "command.grid_y=" << c.command_grid_y << '\n';
  out << "command.eps=" << fmt_double(c.command_eps) << '\n';
  out << "command.nodes=" << c.command_nodes << '\n';
  out << "command.seed=" << c.command_seed << '\n';
  out << "command.workers=" << c.command_workers << '\n';
  out << "command.out=" << c.command_out << '\n';
  out << "command.json=" << (c.command_json ? "true" : "false") << '\n';
  out << "command.check_integral=" << (c.command_check_integral ? "true" : "false")
      << '\n';
  out << "command.pgm=" << (c.command_pgm ? "true" : "false") << '\n';
  out << "command.timings=" << (c.command_timings ? "true" : "false") << '\n';
  out << "scan.tau_lo=" << fmt_double(c.scan_tau_lo) << '\n';
  out << "scan.tau_hi=" << fmt_double(c.scan_tau_hi) << '\n';
  out << "scan.tau_count=" << c.scan_tau_count << '\n';
  out << "scan.alpha_lo=" << fmt_double(c.scan_alpha_lo) << '\n';
  out << "scan.alpha_hi=" << fmt_double(c.scan_alpha_hi) << '\n';
  out << "scan.alpha_count=" << c.scan_alpha_count << '\n';
  out << "scan.rho_n=" << c.scan_rho_n << '\n';
  out << "budget.n_list=" << join_ints(c.budget_n_list) << '\n';
  out << "budget.eps_list=" << join_doubles(c.budget_eps_list) << '\n';
  out << "budget.grid_x=" << c.budget_grid_x << '\n';
  out << "budget.grid_y=" << c.budget_grid_y << '\n';
  out << "budget.strip_nodes=" << c.budget_strip_nodes << '\n';
  out << "budget.strip_transient=" << c.budget_strip_transient << '\n';
  out << "budget.strip_steps=" << c.budget_strip_steps << '\n';
  out << "budget.radius_schedule=" << join_doubles(c.budget_radius_schedule) << '\n';
  out << "budget.delta_list=" << join_doubles(c.budget_delta_list) << '\n';
  out << "budget.cross_check=" << (c.budget_cross_check ? "true" : "false") << '\n';
  out << "probe.radius=" << fmt_double(c.probe_radius) << '\n';
  out << "probe.trials=" << c.probe_trials << '\n';
  out << "probe.iterations=" << c.probe_iterations << '\n';
  out << "probe.modes=" << c.probe_modes << '\n';
  out << "probe.n=" << c.probe_n << '\n';
  out << "probe.grid_x=" << c.probe_grid_x << '\n';
  out << "probe.grid_y=" << c.probe_grid_y << '\n';
  return out.str();
}

BaseMap RunConfig::make_base() const {
  if (base_kind == "rotation") return BaseMap::rotation(base_omega);
  if (base_kind == "skewshift") return BaseMap::skew_shift(base_alpha);
  return BaseMap::odometer(base_radices);
}

FiberFamily RunConfig::make_fiber() const {
  const TrigPoly q = TrigPoly::parse(fiber_q);
  if (fiber_kind == "arnold")
    return FiberFamily::arnold(fiber_tau, fiber_alpha, fiber_beta, q);
  const TrigPoly p = TrigPoly::parse(fiber_p);
  if (fiber_kind == "pfamily") return FiberFamily::pfamily(p, q.scaled(fiber_beta));
  // triglift from config: base-independent fiber modes from fiber.p plus a
  // base-dependent constant tau + beta q(theta)
  std::vector<FiberMode> modes;
  for (int k = 1; k <= p.modes(); ++k) {
    FiberMode m;
    m.cos_coeff = TrigPoly(p.coefficient(2 * k - 1));
    m.sin_coeff = TrigPoly(p.coefficient(2 * k));
    modes.push_back(std::move(m));
  }
  TrigPoly constant = q.scaled(fiber_beta).plus_constant(fiber_tau + p.constant_term());
  return FiberFamily::trig_lift(std::move(constant), std::move(modes));
}

Budget RunConfig::make_budget() const {
  Budget b;
  b.n_list = budget_n_list;
  b.eps_list = budget_eps_list;
  b.grid = GridSpec{budget_grid_x, budget_grid_y};
  b.strip_nodes = budget_strip_nodes;
  b.strip_transient = budget_strip_transient;
  b.strip_steps = budget_strip_steps;
  b.radius_schedule = budget_radius_schedule;
  b.delta_list = budget_delta_list;
  b.cross_check = budget_cross_check;
  return b;
}

GridSpec RunConfig::make_grid() const { return GridSpec{command_grid_x, command_grid_y}; }

ScanConfig RunConfig::make_scan() const {
  ScanConfig s;
  s.tau_lo = scan_tau_lo;
  s.tau_hi = scan_tau_hi;
  s.tau_count = scan_tau_count;
  s.alpha_lo = scan_alpha_lo;
  s.alpha_hi = scan_alpha_hi;
  s.alpha_count = scan_alpha_count;
  s.beta = fiber_beta;
  s.q = TrigPoly::parse(fiber_q);
  s.base = make_base();
  s.budget = make_budget();
  s.seed = command_seed;
  s.workers = command_workers;
  s.rho_n = scan_rho_n;
  return s;
}

}  // namespace tonguelock
