#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "tonguelock/scan.hpp"
#include "tonguelock/version.hpp"

namespace tonguelock {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::ordered_json budget_json(const Budget& b) {
  nlohmann::ordered_json j;
  j["n_list"] = b.n_list;
  j["eps_list"] = b.eps_list;
  j["grid_x"] = b.grid.grid_x;
  j["grid_y"] = b.grid.grid_y;
  j["strip_nodes"] = b.strip_nodes;
  j["strip_transient"] = b.strip_transient;
  j["strip_steps"] = b.strip_steps;
  j["radius_schedule"] = b.radius_schedule;
  j["delta_list"] = b.delta_list;
  j["cross_check"] = b.cross_check;
  return j;
}

}  // namespace

std::string to_csv(const TongueGrid& grid) {
  std::ostringstream out;
  out << "tau,alpha,class,rho_est\n";
  const ScanConfig& cfg = grid.config;
  for (int ia = 0; ia < cfg.alpha_count; ++ia) {
    for (int it = 0; it < cfg.tau_count; ++it) {
      const std::size_t cell =
          static_cast<std::size_t>(ia) * cfg.tau_count + it;
      out << fmt(cfg.tau_at(it)) << ',' << fmt(cfg.alpha_at(ia)) << ','
          << cell_label(grid.cells[cell]) << ',' << fmt(grid.rho_est[cell]) << '\n';
    }
  }
  return out.str();
}

std::string to_pgm(const TongueGrid& grid) {
  const ScanConfig& cfg = grid.config;
  std::ostringstream out;
  out << "P2\n" << cfg.tau_count << ' ' << cfg.alpha_count << "\n3\n";
  for (int ia = 0; ia < cfg.alpha_count; ++ia) {
    for (int it = 0; it < cfg.tau_count; ++it) {
      const std::size_t cell =
          static_cast<std::size_t>(ia) * cfg.tau_count + it;
      out << static_cast<int>(grid.cells[cell]) << (it + 1 == cfg.tau_count ? '\n' : ' ');
    }
  }
  return out.str();
}

std::string to_json_meta(const TongueGrid& grid, bool include_timings) {
  const ScanConfig& cfg = grid.config;
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["config"]["tau"] = {{"lo", cfg.tau_lo}, {"hi", cfg.tau_hi}, {"count", cfg.tau_count}};
  j["config"]["alpha"] = {{"lo", cfg.alpha_lo}, {"hi", cfg.alpha_hi}, {"count", cfg.alpha_count}};
  j["config"]["beta"] = cfg.beta;
  j["config"]["q"] = cfg.q.format();
  j["config"]["base"] = cfg.base.describe();
  j["config"]["seed"] = cfg.seed;
  j["config"]["rho_n"] = cfg.rho_n;
  j["config"]["budget"] = budget_json(cfg.budget);

  std::size_t counts[4] = {0, 0, 0, 0};
  for (CellCode c : grid.cells) ++counts[static_cast<std::size_t>(c)];
  j["cells"]["total"] = grid.cells.size();
  j["cells"]["locked"] = counts[0];
  j["cells"]["unlocked_up"] = counts[1];
  j["cells"]["unlocked_down"] = counts[2];
  j["cells"]["undecided"] = counts[3];
  const Fractions f = locked_fraction(grid);
  j["cells"]["locked_fraction"] = f.locked;
  j["cells"]["undecided_fraction"] = f.undecided;
  if (include_timings) j["timings"]["elapsed_seconds"] = grid.elapsed_seconds;
  return j.dump(2) + "\n";
}

}  // namespace tonguelock
