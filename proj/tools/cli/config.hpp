#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "nisim/analytic_dd.hpp"
#include "nisim/interferometer.hpp"
#include "nisim/optimizer.hpp"
#include "nisim/vibration.hpp"

namespace nisim::cli {

/// Configuration rejected by the schema (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Format { CSV, JSON, SVG };

Format parse_format(const std::string& s);

/// Accepts a number of radians or "pi", "pi/K", "A*pi/K".
double parse_angle(const nlohmann::json& v, const std::string& where);

struct SweepDefocusConfig {
  Geometry geometry;
  long m_min = 0;
  long m_max = 0;
};

struct ProfileConfig {
  Geometry geometry;
  double phi = 0.0;
  bool port_O = true;
  bool port_H = true;
};

struct VibrationConfig {
  vibration::VibrationParams params;
  double omega_min = 0.0;
  double omega_max = 0.0;
  int points = 0;
  double dz_over_z0 = 1.0;
};

struct OptimizeConfig {
  GeometryKind kind = GeometryKind::FourBladeDFS;
  SearchSpace space;
  int top = 10;
};

struct AnalyticConfig {
  dd::DDParams dd;
  double dz_min_over_z0 = 0.0;
  double dz_max_over_z0 = 2.0;
  int points = 0;
  double phi = 0.0;
};

/// Each parser validates the document against its schema (unknown keys are
/// rejected) and writes the fully resolved configuration, defaults included,
/// into `resolved`.
SweepDefocusConfig parse_sweep_defocus(const nlohmann::json& doc, nlohmann::json& resolved);
ProfileConfig parse_profile(const nlohmann::json& doc, nlohmann::json& resolved);
VibrationConfig parse_vibration(const nlohmann::json& doc, nlohmann::json& resolved);
OptimizeConfig parse_optimize(const nlohmann::json& doc, nlohmann::json& resolved);
AnalyticConfig parse_analytic(const nlohmann::json& doc, nlohmann::json& resolved);

nlohmann::json load_config_file(const std::string& path);

}  // namespace nisim::cli
