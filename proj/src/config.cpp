#include "twotier/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "twotier/errors.hpp"

namespace twotier {

using nlohmann::json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

GaussianMixture preset_mixture() {
  GaussianMixture gm;
  gm.components = {
      {0.5, {3.0, 3.0}, {1.5, 1.5}},
      {0.25, {6.0, 7.0}, {2.0, 2.0}},
      {0.25, {7.5, 2.5}, {1.0, 1.0}},
  };
  return gm;
}

// ---------------------------------------------------------------------------

struct Entries {
  std::map<std::string, json> values;
  std::map<std::string, int> lines;

  bool has(const std::string& key) const { return values.count(key) > 0; }

  const json& get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError("missing field '" + key + "'");
    return it->second;
  }
};

int bracket_depth(const std::string& s) {
  int depth = 0;
  bool quoted = false;
  for (char c : s) {
    if (c == '"') quoted = !quoted;
    if (quoted) continue;
    if (c == '[') ++depth;
    if (c == ']') --depth;
  }
  return depth;
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

Entries read_entries(std::istream& in) {
  Entries e;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string text = trim(strip_comment(line));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    const int start = lineno;
    while (bracket_depth(value) > 0 && std::getline(in, line)) {
      ++lineno;
      value += " " + trim(strip_comment(line));
    }
    if (key.empty()) throw ConfigError("line " + std::to_string(start) + ": empty key");
    if (e.has(key)) throw ConfigError("field '" + key + "' given twice");

    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error&) {
      if (value.empty() || value.front() == '[')
        throw ConfigError("field '" + key + "': cannot parse value '" + value + "'");
      parsed = value;  // bare word
    }
    e.values[key] = std::move(parsed);
    e.lines[key] = start;
  }
  return e;
}

double as_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError("field '" + field + "' must be a number");
  return j.get<double>();
}

std::size_t as_count(const json& j, const std::string& field) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw ConfigError("field '" + field + "' must be an integer");
  const auto v = j.get<long long>();
  if (v < 0) throw ConfigError("field '" + field + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

std::vector<double> as_vector(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError("field '" + field + "' must be an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<double>> as_matrix(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError("field '" + field + "' must be an array of arrays");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_vector(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

// A point is either [x, y] or a bare x (1-D).
Vec2 as_point(const json& j, const std::string& field, double fill_y) {
  if (j.is_number()) return {j.get<double>(), fill_y};
  const auto v = as_vector(j, field);
  if (v.size() != 2) throw ConfigError("field '" + field + "' must be a number or a pair");
  return {v[0], v[1]};
}

std::string as_word(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError("field '" + field + "' must be a word");
  return j.get<std::string>();
}

Region parse_region(const json& j) {
  const auto v = as_vector(j, "region");
  if (v.size() == 2) return Region::interval(v[0], v[1]);
  if (v.size() == 4) return Region::rectangle(v[0], v[1], v[2], v[3]);
  throw ConfigError("field 'region' must be [xmin, xmax] or [xmin, xmax, ymin, ymax]");
}

DensityModel parse_density(const Entries& e, const std::filesystem::path& base) {
  const std::string kind = e.has("density") ? lower(as_word(e.get("density"), "density")) : "uniform";
  if (kind == "uniform") return UniformDensity{};

  if (kind == "gaussian") {
    const auto& w = e.get("gm_weights");
    const auto& mu = e.get("gm_means");
    const auto& var = e.get("gm_variances");
    const auto weights = as_vector(w, "gm_weights");
    if (!mu.is_array() || mu.size() != weights.size())
      throw ConfigError("field 'gm_means' must have one entry per weight");
    if (!var.is_array() || var.size() != weights.size())
      throw ConfigError("field 'gm_variances' must have one entry per weight");
    GaussianMixture gm;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      const std::string idx = "[" + std::to_string(k) + "]";
      const double vx = var[k].is_number() ? var[k].get<double>() : 0.0;
      GaussianComponent c;
      c.weight = weights[k];
      c.mean = as_point(mu[k], "gm_means" + idx, 0.0);
      c.variance = var[k].is_number() ? Vec2{vx, vx} : as_point(var[k], "gm_variances" + idx, 0.0);
      gm.components.push_back(c);
    }
    return gm;
  }

  if (kind == "empirical") {
    if (e.has("empirical_file")) {
      std::filesystem::path p = as_word(e.get("empirical_file"), "empirical_file");
      if (p.is_relative()) p = base / p;
      return load_empirical_csv(p);
    }
    EmpiricalGrid g;
    g.rows = as_count(e.get("empirical_rows"), "empirical_rows");
    g.cols = as_count(e.get("empirical_cols"), "empirical_cols");
    const auto ext = as_vector(e.get("empirical_extent"), "empirical_extent");
    if (ext.size() != 4) throw ConfigError("field 'empirical_extent' must be [xmin, xmax, ymin, ymax]");
    g.xmin = ext[0];
    g.xmax = ext[1];
    g.ymin = ext[2];
    g.ymax = ext[3];
    g.values = as_vector(e.get("empirical_values"), "empirical_values");
    return g;
  }

  throw ConfigError("field 'density' must be uniform, gaussian or empirical, got '" + kind + "'");
}

json point_json(Vec2 v) { return json::array({v.x, v.y}); }

}  // namespace

Scenario preset(std::string_view name, bool limited) {
  const std::string key = lower(name);
  const auto dash = key.find('-');
  const std::string net = key.substr(0, dash);
  const std::string dens = dash == std::string::npos ? "uniform" : key.substr(dash + 1);
  if ((net != "wsn1" && net != "wsn2") || (dens != "uniform" && dens != "gaussian"))
    throw UsageError("unknown preset '" + std::string(name) +
                     "' (expected WSN1-uniform, WSN1-gaussian, WSN2-uniform or WSN2-gaussian)");

  Scenario sc;
  sc.n_aps = 20;
  sc.n_fcs = net == "wsn1" ? 1 : 4;
  sc.beta = 0.25;
  sc.region = Region::rectangle(0.0, 10.0, 0.0, 10.0);
  sc.a.resize(sc.n_aps);
  sc.b.assign(sc.n_aps, std::vector<double>(sc.n_fcs));
  for (std::size_t n = 0; n < sc.n_aps; ++n) {
    sc.a[n] = n < 10 ? 1.0 : 2.0;
    for (std::size_t m = 0; m < sc.n_fcs; ++m) {
      const double base = n < 4 ? 1.0 : 2.0;
      sc.b[n][m] = (sc.n_fcs > 1 && m >= 2) ? 2.0 * base : base;
    }
  }
  if (dens == "gaussian") sc.density = preset_mixture();

  if (limited) {
    sc.sensor_budget = 4.0;
    std::vector<double> budgets(sc.n_aps);
    for (std::size_t n = 0; n < sc.n_aps; ++n) budgets[n] = n < 4 ? 25.0 : n < 10 ? 16.0 : 9.0;
    sc.ap_budgets = std::move(budgets);
  }
  sc.validate();
  return sc;
}

Scenario parse_scenario(std::istream& in, const std::filesystem::path& base_dir) {
  const Entries e = read_entries(in);

  static const char* known[] = {"n_aps", "n_fcs", "a", "b", "beta", "sensor_budget", "ap_budgets",
                                "region", "density", "gm_weights", "gm_means", "gm_variances",
                                "empirical_file", "empirical_rows", "empirical_cols",
                                "empirical_extent", "empirical_values"};
  for (const auto& [key, _] : e.values)
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ConfigError("unknown field '" + key + "' on line " + std::to_string(e.lines.at(key)));

  Scenario sc;
  sc.n_aps = as_count(e.get("n_aps"), "n_aps");
  sc.n_fcs = as_count(e.get("n_fcs"), "n_fcs");
  sc.a = as_vector(e.get("a"), "a");
  sc.b = as_matrix(e.get("b"), "b");
  sc.beta = e.has("beta") ? as_number(e.get("beta"), "beta") : 0.25;
  if (e.has("sensor_budget")) sc.sensor_budget = as_number(e.get("sensor_budget"), "sensor_budget");
  if (e.has("ap_budgets")) sc.ap_budgets = as_vector(e.get("ap_budgets"), "ap_budgets");
  sc.region = parse_region(e.get("region"));
  sc.density = parse_density(e, base_dir);
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  return parse_scenario(in, path.parent_path());
}

void write_scenario(std::ostream& out, const Scenario& sc) {
  out << "n_aps = " << sc.n_aps << "\n";
  out << "n_fcs = " << sc.n_fcs << "\n";
  out << "a = " << json(sc.a).dump() << "\n";
  out << "b = [\n";
  for (std::size_t n = 0; n < sc.b.size(); ++n)
    out << "  " << json(sc.b[n]).dump() << (n + 1 < sc.b.size() ? ",\n" : "\n");
  out << "]\n";
  out << "beta = " << json(sc.beta).dump() << "\n";
  if (sc.region.dimension == 1)
    out << "region = " << json::array({sc.region.lower.x, sc.region.upper.x}).dump() << "\n";
  else
    out << "region = "
        << json::array({sc.region.lower.x, sc.region.upper.x, sc.region.lower.y, sc.region.upper.y}).dump()
        << "\n";

  if (const auto* gm = std::get_if<GaussianMixture>(&sc.density)) {
    json w = json::array(), mu = json::array(), var = json::array();
    for (const auto& c : gm->components) {
      w.push_back(c.weight);
      mu.push_back(point_json(c.mean));
      var.push_back(point_json(c.variance));
    }
    out << "density = gaussian\n";
    out << "gm_weights = " << w.dump() << "\n";
    out << "gm_means = " << mu.dump() << "\n";
    out << "gm_variances = " << var.dump() << "\n";
  } else if (const auto* g = std::get_if<EmpiricalGrid>(&sc.density)) {
    out << "density = empirical\n";
    out << "empirical_rows = " << g->rows << "\n";
    out << "empirical_cols = " << g->cols << "\n";
    out << "empirical_extent = " << json::array({g->xmin, g->xmax, g->ymin, g->ymax}).dump() << "\n";
    out << "empirical_values = " << json(g->values).dump() << "\n";
  } else {
    out << "density = uniform\n";
  }

  if (sc.sensor_budget) out << "sensor_budget = " << json(*sc.sensor_budget).dump() << "\n";
  if (sc.ap_budgets) out << "ap_budgets = " << json(*sc.ap_budgets).dump() << "\n";
}

void save_scenario(const std::filesystem::path& path, const Scenario& sc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scenario file " + path.string());
  write_scenario(out, sc);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace twotier
