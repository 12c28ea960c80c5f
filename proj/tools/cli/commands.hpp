#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/dataset.hpp"

namespace nisim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

Dataset cmd_sweep_defocus(const SweepDefocusConfig& cfg, const nlohmann::json& resolved);
Dataset cmd_profile(const ProfileConfig& cfg, const nlohmann::json& resolved);
Dataset cmd_vibration(const VibrationConfig& cfg, const nlohmann::json& resolved);
Dataset cmd_optimize(const OptimizeConfig& cfg, const nlohmann::json& resolved);
Dataset cmd_analytic(const AnalyticConfig& cfg, const nlohmann::json& resolved);

/// Parses and runs one command on an already loaded config document.
Dataset dispatch(const std::string& command, const nlohmann::json& doc);

/// Full command line, argv[0] excluded. Writes the dataset to --out or `out`,
/// diagnostics to `err`, and returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nisim::cli
