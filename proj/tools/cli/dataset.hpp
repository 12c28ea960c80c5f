#pragma once

#include <json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "cli/config.hpp"

namespace nisim::cli {

using Cell = std::variant<long, double, std::string>;

/// Tabular command output. CSV is the canonical form.
struct Dataset {
  std::string command;
  nlohmann::json config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 12 significant digits, "%.12g".
std::string format_number(double v);

/// UTF-8, comma separated, LF endings, '#' header comments carrying the
/// command and the resolved config.
std::string to_csv(const Dataset& d);
std::string to_json(const Dataset& d);
/// Line chart of every numeric column against the first one. Rows whose
/// abscissa is not numeric are skipped.
std::string to_svg(const Dataset& d);

std::string render(const Dataset& d, Format f);

}  // namespace nisim::cli
