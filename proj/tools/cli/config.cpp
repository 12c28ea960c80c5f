#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <regex>
#include <set>

namespace nisim::cli {

using nlohmann::json;

namespace {

// Typed access to one JSON object that rejects keys outside `allowed`.
class Reader {
 public:
  Reader(const json& obj, std::string where, std::set<std::string> allowed) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) fail("", "expected an object");
    for (const auto& [key, _] : obj_.items())
      if (!allowed.count(key)) fail(key, "unknown key");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    if (!has(key)) return require(key, fallback);
    const json& v = obj_.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "expected a finite number");
    return d;
  }

  long integer(const std::string& key, std::optional<long> fallback = std::nullopt) const {
    if (!has(key)) return require(key, fallback);
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<long>();
  }

  std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt) const {
    if (!has(key)) return require(key, fallback);
    const json& v = obj_.at(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  double angle(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    if (!has(key)) return require(key, fallback);
    return parse_angle(obj_.at(key), path(key));
  }

  const json& raw(const std::string& key) const {
    if (!has(key)) fail(key, "missing required key");
    return obj_.at(key);
  }

  Reader child(const std::string& key, std::set<std::string> allowed) const {
    return Reader(raw(key), path(key), std::move(allowed));
  }

  std::string path(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    std::string at = key.empty() ? (where_.empty() ? "<root>" : where_) : path(key);
    throw ConfigError(at + ": " + msg);
  }

 private:
  template <class T>
  T require(const std::string& key, const std::optional<T>& fallback) const {
    if (!fallback) fail(key, "missing required key");
    return *fallback;
  }

  const json& obj_;
  std::string where_;
};

GeometryKind parse_kind(const std::string& s, const Reader& r, const std::string& key) {
  if (s == "dfs") return GeometryKind::FourBladeDFS;
  if (s == "mz") return GeometryKind::ThreeBladeMZ;
  r.fail(key, "expected \"dfs\" or \"mz\"");
}

const char* kind_name(GeometryKind k) { return k == GeometryKind::FourBladeDFS ? "dfs" : "mz"; }

Geometry parse_geometry(const Reader& parent, json& resolved) {
  Reader r = parent.child("geometry", {"kind", "layers", "theta", "xi", "zeta", "defocus_m", "control_phase"});
  GeometryKind kind = parse_kind(r.string("kind", "dfs"), r, "kind");
  long layers = r.integer("layers");
  double theta = r.angle("theta");
  double xi = r.angle("xi", 0.0);
  double zeta = r.angle("zeta", 0.0);
  long m = r.integer("defocus_m", 0);
  double phi = r.angle("control_phase", 0.0);
  if (layers < 1 || layers > 1'000'000) r.fail("layers", "must lie in [1, 1000000]");
  try {
    Geometry g{kind, BladeParams(static_cast<int>(layers), theta, xi, zeta), m, phi};
    g.validate();
    resolved = {{"kind", kind_name(kind)}, {"layers", layers}, {"theta", theta}, {"xi", g.blade.xi()},
                {"zeta", g.blade.zeta()}, {"defocus_m", m}, {"control_phase", phi}};
    return g;
  } catch (const std::invalid_argument& e) {
    r.fail("", e.what());
  }
}

Port parse_port(const std::string& s, const Reader& r, const std::string& key) {
  if (s == "H") return Port::H;
  if (s == "O") return Port::O;
  r.fail(key, "expected \"H\" or \"O\"");
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::CSV;
  if (s == "json") return Format::JSON;
  if (s == "svg") return Format::SVG;
  throw ConfigError("format: expected csv, json or svg");
}

double parse_angle(const json& v, const std::string& where) {
  if (v.is_number()) {
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where + ": expected a finite angle");
    return d;
  }
  if (!v.is_string()) throw ConfigError(where + ": expected radians or an expression like \"pi/64\"");
  static const std::regex pattern(R"(^\s*(?:([0-9]*\.?[0-9]+)\s*\*\s*)?pi(?:\s*/\s*([0-9]*\.?[0-9]+))?\s*$)");
  std::smatch m;
  std::string s = v.get<std::string>();
  if (!std::regex_match(s, m, pattern)) throw ConfigError(where + ": cannot parse angle \"" + s + "\"");
  double factor = m[1].matched ? std::stod(m[1].str()) : 1.0;
  double divisor = m[2].matched ? std::stod(m[2].str()) : 1.0;
  if (divisor == 0.0) throw ConfigError(where + ": zero divisor in angle");
  return factor * std::numbers::pi / divisor;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
}

SweepDefocusConfig parse_sweep_defocus(const json& doc, json& resolved) {
  Reader r(doc, "", {"geometry", "m_min", "m_max"});
  SweepDefocusConfig cfg;
  json geo;
  cfg.geometry = parse_geometry(r, geo);
  cfg.m_min = r.integer("m_min", 0);
  cfg.m_max = r.integer("m_max", cfg.geometry.blade.layers());
  if (cfg.m_max < cfg.m_min) r.fail("m_max", "empty m range (m_max < m_min)");
  const long limit = 4L * cfg.geometry.blade.layers();
  if (std::labs(cfg.m_min) > limit || std::labs(cfg.m_max) > limit) r.fail("m_max", "m range exceeds |m| <= 4N");
  resolved = {{"geometry", geo}, {"m_min", cfg.m_min}, {"m_max", cfg.m_max}};
  return cfg;
}

ProfileConfig parse_profile(const json& doc, json& resolved) {
  Reader r(doc, "", {"geometry", "phi", "ports"});
  ProfileConfig cfg;
  json geo;
  cfg.geometry = parse_geometry(r, geo);
  cfg.phi = r.angle("phi", 0.0);
  json ports = json::array({"H", "O"});
  if (r.has("ports")) {
    const json& p = r.raw("ports");
    if (!p.is_array() || p.empty()) r.fail("ports", "expected a non-empty array of \"H\"/\"O\"");
    cfg.port_H = cfg.port_O = false;
    for (const auto& e : p) {
      if (!e.is_string()) r.fail("ports", "expected strings");
      (parse_port(e.get<std::string>(), r, "ports") == Port::H ? cfg.port_H : cfg.port_O) = true;
    }
    ports = json::array();
    if (cfg.port_H) ports.push_back("H");
    if (cfg.port_O) ports.push_back("O");
  }
  resolved = {{"geometry", geo}, {"phi", cfg.phi}, {"ports", ports}};
  return cfg;
}

VibrationConfig parse_vibration(const json& doc, json& resolved) {
  Reader r(doc, "", {"noise", "omega_min", "omega_max", "points", "dz_over_z0"});
  Reader n = r.child("noise", {"theta0", "tau", "v_y", "v_z", "wavelength_angstrom", "bragg_angle_deg",
                               "blade_thickness", "m_n", "hbar"});
  VibrationConfig cfg;
  auto& p = cfg.params;
  p.theta0 = n.number("theta0");
  p.tau = n.number("tau");
  p.blade_thickness = n.number("blade_thickness", 0.0);
  p.m_n = n.number("m_n", vibration::kNeutronMass);
  p.hbar = n.number("hbar", vibration::kHbar);
  bool explicit_v = n.has("v_y") || n.has("v_z");
  bool from_wavelength = n.has("wavelength_angstrom") || n.has("bragg_angle_deg");
  if (explicit_v == from_wavelength)
    n.fail("", "give either v_y and v_z, or wavelength_angstrom and bragg_angle_deg");
  if (explicit_v) {
    p.v_y = n.number("v_y");
    p.v_z = n.number("v_z");
  } else {
    double lambda = n.number("wavelength_angstrom") * 1e-10;
    double bragg = n.number("bragg_angle_deg") * std::numbers::pi / 180.0;
    if (!(lambda > 0.0)) n.fail("wavelength_angstrom", "must be positive");
    double v = vibration::neutron_speed(lambda);
    p.v_y = v * std::sin(bragg);
    p.v_z = v * std::cos(bragg);
  }
  cfg.omega_min = r.number("omega_min", 0.0);
  cfg.omega_max = r.number("omega_max");
  cfg.points = static_cast<int>(r.integer("points", 201));
  cfg.dz_over_z0 = r.number("dz_over_z0", 1.0);
  if (cfg.points < 2) r.fail("points", "need at least 2 points");
  if (!(cfg.omega_max > cfg.omega_min) || cfg.omega_min < 0.0) r.fail("omega_max", "need 0 <= omega_min < omega_max");
  if (cfg.dz_over_z0 < 0.0) r.fail("dz_over_z0", "must be non-negative");
  p.omega = cfg.omega_max;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    n.fail("", e.what());
  }
  resolved = {{"noise",
               {{"theta0", p.theta0}, {"tau", p.tau}, {"v_y", p.v_y}, {"v_z", p.v_z},
                {"blade_thickness", p.blade_thickness}, {"m_n", p.m_n}, {"hbar", p.hbar}}},
              {"omega_min", cfg.omega_min}, {"omega_max", cfg.omega_max}, {"points", cfg.points},
              {"dz_over_z0", cfg.dz_over_z0}};
  return cfg;
}

OptimizeConfig parse_optimize(const json& doc, json& resolved) {
  Reader r(doc, "", {"kind", "layers_min", "layers_max", "theta_grid", "m_policy", "m_fixed", "port", "xi", "zeta",
                     "top"});
  OptimizeConfig cfg;
  cfg.kind = parse_kind(r.string("kind", "dfs"), r, "kind");
  auto& s = cfg.space;
  s.n_min = static_cast<int>(r.integer("layers_min"));
  s.n_max = static_cast<int>(r.integer("layers_max", s.n_min));
  const json& grid = r.raw("theta_grid");
  if (!grid.is_array()) r.fail("theta_grid", "expected an array of angles");
  for (std::size_t i = 0; i < grid.size(); ++i)
    s.theta_grid.push_back(parse_angle(grid[i], r.path("theta_grid") + "[" + std::to_string(i) + "]"));
  std::string policy = r.string("m_policy", "fixed");
  long fixed = r.integer("m_fixed", 0);
  if (policy == "fixed")
    s.m_policy = MPolicy::fixed_at(fixed);
  else if (policy == "sweep_all")
    s.m_policy = MPolicy::sweep_all();
  else if (policy == "half_n")
    s.m_policy = MPolicy::half_n();
  else
    r.fail("m_policy", "expected fixed, sweep_all or half_n");
  s.port = parse_port(r.string("port", "H"), r, "port");
  s.xi = r.angle("xi", 0.0);
  s.zeta = r.angle("zeta", 0.0);
  cfg.top = static_cast<int>(r.integer("top", 10));
  if (cfg.top < 1) r.fail("top", "must be positive");
  try {
    s.validate();
    if (policy == "fixed")
      for (int n = s.n_min; n <= s.n_max; ++n)
        if (std::labs(fixed) > 4L * n) throw std::invalid_argument("m_fixed exceeds 4N for N = " + std::to_string(n));
  } catch (const std::invalid_argument& e) {
    r.fail("", e.what());
  }
  resolved = {{"kind", kind_name(cfg.kind)}, {"layers_min", s.n_min},  {"layers_max", s.n_max},
              {"theta_grid", s.theta_grid}, {"m_policy", policy},       {"m_fixed", fixed},
              {"port", s.port == Port::H ? "H" : "O"}, {"xi", s.xi}, {"zeta", s.zeta}, {"top", cfg.top}};
  return cfg;
}

AnalyticConfig parse_analytic(const json& doc, json& resolved) {
  Reader r(doc, "", {"dd", "dz_min_over_z0", "dz_max_over_z0", "points", "phi"});
  Reader d = r.child("dd", {"z0", "delta_H", "v_ratio_phase", "chi", "eta_dist", "quad_tol"});
  AnalyticConfig cfg;
  cfg.dd.z0 = d.number("z0");
  cfg.dd.delta_H = d.number("delta_H");
  cfg.dd.v_ratio_phase = d.angle("v_ratio_phase", 0.0);
  cfg.dd.chi = d.angle("chi", 0.0);
  cfg.dd.quadrature.abs_tol = d.number("quad_tol", 1e-10);
  json dist = {{"kind", "gaussian"}, {"sigma", 1.0}, {"eta_max", 5.0}};
  if (d.has("eta_dist")) {
    Reader g = d.child("eta_dist", {"kind", "sigma", "eta_max", "eta", "weight", "eta0"});
    std::string kind = g.string("kind");
    try {
      if (kind == "gaussian") {
        double sigma = g.number("sigma", 1.0), cut = g.number("eta_max", 5.0);
        cfg.dd.eta_dist = dd::EtaDistribution::gaussian(sigma, cut);
        dist = {{"kind", kind}, {"sigma", sigma}, {"eta_max", cut}};
      } else if (kind == "uniform") {
        double cut = g.number("eta_max", 5.0);
        cfg.dd.eta_dist = dd::EtaDistribution::uniform(cut);
        dist = {{"kind", kind}, {"eta_max", cut}};
      } else if (kind == "tabulated") {
        auto eta = g.raw("eta"), weight = g.raw("weight");
        if (!eta.is_array() || !weight.is_array()) g.fail("eta", "expected arrays eta and weight");
        auto as_vec = [&](const json& a, const std::string& key) {
          std::vector<double> out;
          for (const auto& e : a) {
            if (!e.is_number()) g.fail(key, "expected numbers");
            out.push_back(e.get<double>());
          }
          return out;
        };
        auto ev = as_vec(eta, "eta"), wv = as_vec(weight, "weight");
        cfg.dd.eta_dist = dd::EtaDistribution::tabulated(ev, wv);
        dist = {{"kind", kind}, {"eta", ev}, {"weight", wv}};
      } else if (kind == "delta") {
        double eta0 = g.number("eta0", 0.0);
        cfg.dd.eta_dist = dd::EtaDistribution::delta(eta0);
        dist = {{"kind", kind}, {"eta0", eta0}};
      } else {
        g.fail("kind", "expected gaussian, uniform, tabulated or delta");
      }
    } catch (const std::invalid_argument& e) {
      g.fail("", e.what());
    }
  }
  try {
    cfg.dd.validate();
  } catch (const std::invalid_argument& e) {
    d.fail("", e.what());
  }
  if (!(cfg.dd.quadrature.abs_tol > 0.0)) d.fail("quad_tol", "must be positive");
  cfg.dz_min_over_z0 = r.number("dz_min_over_z0", 0.0);
  cfg.dz_max_over_z0 = r.number("dz_max_over_z0", 2.0);
  cfg.points = static_cast<int>(r.integer("points", 201));
  cfg.phi = r.angle("phi", 0.0);
  if (cfg.points < 2) r.fail("points", "need at least 2 points");
  if (!(cfg.dz_max_over_z0 > cfg.dz_min_over_z0)) r.fail("dz_max_over_z0", "need dz_min_over_z0 < dz_max_over_z0");
  resolved = {{"dd",
               {{"z0", cfg.dd.z0}, {"delta_H", cfg.dd.delta_H}, {"v_ratio_phase", cfg.dd.v_ratio_phase},
                {"chi", cfg.dd.chi}, {"eta_dist", dist}, {"quad_tol", cfg.dd.quadrature.abs_tol}}},
              {"dz_min_over_z0", cfg.dz_min_over_z0}, {"dz_max_over_z0", cfg.dz_max_over_z0},
              {"points", cfg.points}, {"phi", cfg.phi}};
  return cfg;
}

}  // namespace nisim::cli
