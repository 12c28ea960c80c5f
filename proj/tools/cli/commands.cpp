#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "nisim/analysis.hpp"
#include "nisim/error.hpp"
#include "nisim/parallel.hpp"

namespace nisim::cli {

using nlohmann::json;

Dataset cmd_sweep_defocus(const SweepDefocusConfig& cfg, const json& resolved) {
  Dataset d{"sweep-defocus", resolved, {"m", "contrast_H", "contrast_O", "abs_gamma", "arg_gamma"}, {}};
  for (const auto& p : defocus_sweep(cfg.geometry, cfg.m_min, cfg.m_max))
    d.rows.push_back({p.m, p.contrast_H, p.contrast_O, std::abs(p.gamma_H), std::arg(p.gamma_H)});
  return d;
}

Dataset cmd_profile(const ProfileConfig& cfg, const json& resolved) {
  struct Column {
    std::string name;
    Profile profile;
  };
  std::vector<Column> cols;
  const long m = cfg.geometry.defocus_m;
  std::vector<long> shifts = m == 0 ? std::vector<long>{0} : std::vector<long>{0, m};
  std::vector<ExitFields> exits(shifts.size());
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    Geometry g = cfg.geometry;
    g.defocus_m = shifts[i];
    exits[i] = propagate_paths(g);
  }
  for (Port port : {Port::H, Port::O}) {
    if ((port == Port::H && !cfg.port_H) || (port == Port::O && !cfg.port_O)) continue;
    for (std::size_t i = 0; i < shifts.size(); ++i)
      cols.push_back({std::string(port == Port::H ? "H" : "O") + "_m" + std::to_string(shifts[i]),
                      exit_profile(exits[i], port, cfg.phi)});
  }

  long lo = cols.front().profile.lo, hi = lo;
  for (const auto& c : cols) {
    lo = std::min(lo, c.profile.lo);
    hi = std::max(hi, c.profile.lo + static_cast<long>(c.profile.intensity.size()));
  }

  Dataset d{"profile", resolved, {"j"}, {}};
  for (const auto& c : cols) d.columns.push_back(c.name);
  for (long j = lo; j < hi; ++j) {
    std::vector<Cell> row{j};
    for (const auto& c : cols) {
      long k = j - c.profile.lo;
      bool inside = k >= 0 && k < static_cast<long>(c.profile.intensity.size());
      row.emplace_back(inside ? c.profile.intensity[static_cast<std::size_t>(k)] : 0.0);
    }
    d.rows.push_back(std::move(row));
  }
  std::vector<Cell> summary{std::string("rms")};
  for (const auto& c : cols) summary.emplace_back(c.profile.rms_spread());
  d.rows.push_back(std::move(summary));
  return d;
}

Dataset cmd_vibration(const VibrationConfig& cfg, const json& resolved) {
  Dataset d{"vibration", resolved, {"omega", "bessel_arg", "relcontrast", "relcontrast_defocused"}, {}};
  std::vector<std::vector<Cell>> rows(static_cast<std::size_t>(cfg.points));
  parallel_for(rows.size(), [&](std::size_t i) {
    vibration::VibrationParams p = cfg.params;
    p.omega = cfg.omega_min + (cfg.omega_max - cfg.omega_min) * static_cast<double>(i) / (cfg.points - 1);
    rows[i] = {p.omega, vibration::bessel_argument(p), vibration::relative_contrast(p),
               vibration::defocused_relative_contrast(p, cfg.dz_over_z0)};
  });
  d.rows = std::move(rows);
  return d;
}

Dataset cmd_optimize(const OptimizeConfig& cfg, const json& resolved) {
  Dataset d{"optimize", resolved, {"rank", "N", "theta", "theta_over_pi", "m", "contrast"}, {}};
  auto ranked = grid_search(cfg.space, cfg.kind);
  for (std::size_t i = 0; i < ranked.size() && i < static_cast<std::size_t>(cfg.top); ++i) {
    const auto& r = ranked[i];
    d.rows.push_back({static_cast<long>(i + 1), static_cast<long>(r.n), r.theta, r.theta / std::numbers::pi, r.m,
                      r.contrast});
  }
  return d;
}

Dataset cmd_analytic(const AnalyticConfig& cfg, const json& resolved) {
  Dataset d{"analytic", resolved, {"dz_over_z0", "abs_gamma", "arg_gamma", "contrast_H", "I_H", "I_O"}, {}};
  const double a_o = dd::j_mn(4, 0, cfg.dd) + dd::j_mn(0, 4, cfg.dd);
  const double a_h = 2.0 * dd::j_mn(2, 2, cfg.dd);
  std::vector<std::vector<Cell>> rows(static_cast<std::size_t>(cfg.points));
  parallel_for(rows.size(), [&](std::size_t i) {
    double ratio =
        cfg.dz_min_over_z0 + (cfg.dz_max_over_z0 - cfg.dz_min_over_z0) * static_cast<double>(i) / (cfg.points - 1);
    cplx gamma = dd::coherence_integral(cfg.dd, ratio * cfg.dd.z0);
    double osc = a_h * std::abs(gamma) * std::cos(cfg.phi - std::arg(gamma));
    rows[i] = {ratio, std::abs(gamma), std::arg(gamma), std::abs(gamma), a_h + osc, a_o - osc};
  });
  d.rows = std::move(rows);
  return d;
}

Dataset dispatch(const std::string& command, const json& doc) {
  json resolved;
  if (command == "sweep-defocus") return cmd_sweep_defocus(parse_sweep_defocus(doc, resolved), resolved);
  if (command == "profile") return cmd_profile(parse_profile(doc, resolved), resolved);
  if (command == "vibration") return cmd_vibration(parse_vibration(doc, resolved), resolved);
  if (command == "optimize") return cmd_optimize(parse_optimize(doc, resolved), resolved);
  if (command == "analytic") return cmd_analytic(parse_analytic(doc, resolved), resolved);
  throw ConfigError("unknown command " + command);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect-crystal neutron interferometer simulator"};
  app.require_subcommand(1, 1);
  std::string config_path, out_path, format = "csv";
  const char* names[] = {"sweep-defocus", "profile", "vibration", "optimize", "analytic"};
  for (const char* name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_path, "Output file (default stdout)");
    sub->add_option("--format", format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "nisim: " << e.what() << "\n";
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Format f = parse_format(format);
    Dataset d = dispatch(command, load_config_file(config_path));
    std::string text = render(d, f);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw ConfigError("cannot write " + out_path);
      file << text;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "nisim: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "nisim: invalid parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "nisim: numerical tolerance failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace nisim::cli
