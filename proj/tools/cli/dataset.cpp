#include "cli/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace nisim::cli {

using nlohmann::json;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

json cell_json(const Cell& c) {
  if (const auto* l = std::get_if<long>(&c)) return *l;
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::strtod(format_number(*d).c_str(), nullptr);
  }
  return std::get<std::string>(c);
}

std::optional<double> cell_number(const Cell& c) {
  if (const auto* l = std::get_if<long>(&c)) return static_cast<double>(*l);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return std::nullopt;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string to_csv(const Dataset& d) {
  std::ostringstream out;
  out << "# nisim " << d.command << '\n';
  out << "# config: " << d.config.dump() << '\n';
  for (std::size_t i = 0; i < d.columns.size(); ++i) out << (i ? "," : "") << d.columns[i];
  out << '\n';
  for (const auto& row : d.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Dataset& d) {
  json rows = json::array();
  for (const auto& row : d.rows) {
    json r = json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  json doc = {{"command", d.command}, {"config", d.config}, {"columns", d.columns}, {"rows", std::move(rows)}};
  return doc.dump(1) + "\n";
}

std::string to_svg(const Dataset& d) {
  constexpr double width = 720, height = 440, left = 70, right = 160, top = 30, bottom = 50;
  constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::vector<std::size_t> series;
  for (std::size_t c = 1; c < d.columns.size(); ++c) {
    bool numeric = std::any_of(d.rows.begin(), d.rows.end(), [&](const auto& r) {
      return c < r.size() && cell_number(r[0]) && cell_number(r[c]);
    });
    if (numeric) series.push_back(c);
  }

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& r : d.rows) {
    auto x = r.empty() ? std::nullopt : cell_number(r[0]);
    if (!x) continue;
    xmin = std::min(xmin, *x);
    xmax = std::max(xmax, *x);
    for (auto c : series)
      if (auto y = cell_number(r[c]); y && std::isfinite(*y)) {
        ymin = std::min(ymin, *y);
        ymax = std::max(ymax, *y);
      }
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0;
  if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;

  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<title>nisim " << escape_xml(d.command) << "</title>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#000\"/>\n";
  auto label = [&](double x, double y, const std::string& text, const char* anchor) {
    out << "<text x=\"" << format_number(x) << "\" y=\"" << format_number(y) << "\" text-anchor=\"" << anchor << "\">"
        << escape_xml(text) << "</text>\n";
  };
  label(left, top + ph + 18, format_number(xmin), "start");
  label(left + pw, top + ph + 18, format_number(xmax), "end");
  label(left + pw / 2, top + ph + 38, d.columns.empty() ? "" : d.columns[0], "middle");
  label(left - 6, top + ph, format_number(ymin), "end");
  label(left - 6, top + 10, format_number(ymax), "end");

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = palette[s % std::size(palette)];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& r : d.rows) {
      auto x = r.empty() ? std::nullopt : cell_number(r[0]);
      auto y = series[s] < r.size() ? cell_number(r[series[s]]) : std::nullopt;
      if (!x || !y || !std::isfinite(*y)) continue;
      out << (first ? "" : " ") << format_number(sx(*x)) << "," << format_number(sy(*y));
      first = false;
    }
    out << "\"/>\n";
    double ly = top + 14 + 18 * static_cast<double>(s);
    out << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + pw + 32 << "\" y2=\""
        << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    label(left + pw + 36, ly, d.columns[series[s]], "start");
  }
  out << "</svg>\n";
  return out.str();
}

std::string render(const Dataset& d, Format f) {
  switch (f) {
    case Format::CSV: return to_csv(d);
    case Format::JSON: return to_json(d);
    case Format::SVG: return to_svg(d);
  }
  return {};
}

}  // namespace nisim::cli
