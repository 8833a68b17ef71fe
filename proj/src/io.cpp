#include "twotier/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace twotier {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << "iter,sensor_power,ap_power,two_tier_power,coverage\n";
  for (const auto& s : trace.steps)
    out << s.iter << ',' << format_double(s.report.sensor_power) << ',' << format_double(s.report.ap_power)
        << ',' << format_double(s.report.two_tier_power) << ',' << format_double(s.report.coverage) << '\n';
}

void write_partition_csv(std::ostream& out, const DensityGrid& grid, const Partition& part) {
  out << "cell_x,cell_y,ap_index\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out << format_double(grid.centers[i].x) << ',' << format_double(grid.centers[i].y) << ','
        << part.assign[i] << '\n';
}

void write_tradeoff_csv(std::ostream& out, const TradeoffCurve& curve) {
  out << "beta,sensor_power,ap_power,on_envelope\n";
  for (const auto& p : curve.points)
    out << format_double(p.beta) << ',' << format_double(p.sensor_power) << ',' << format_double(p.ap_power)
        << ',' << (p.on_envelope ? 1 : 0) << '\n';
}

nlohmann::json deployment_json(const Deployment& dep) {
  nlohmann::json j;
  j["p"] = nlohmann::json::array();
  j["q"] = nlohmann::json::array();
  for (Vec2 x : dep.p) j["p"].push_back({x.x, x.y});
  for (Vec2 x : dep.q) j["q"].push_back({x.x, x.y});
  j["t"] = dep.t;
  return j;
}

Deployment deployment_from_json(const nlohmann::json& j) {
  Deployment dep;
  try {
    for (const auto& x : j.at("p")) dep.p.push_back({x.at(0).get<double>(), x.at(1).get<double>()});
    for (const auto& x : j.at("q")) dep.q.push_back({x.at(0).get<double>(), x.at(1).get<double>()});
    dep.t = j.at("t").get<std::vector<Index>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed deployment: ") + e.what());
  }
  if (dep.t.size() != dep.p.size()) throw ConfigError("deployment 't' must have one entry per AP");
  return dep;
}

namespace {

struct Canvas {
  Region region;
  double width = 600.0;
  double height = 600.0;
  double margin = 10.0;

  explicit Canvas(const Region& r) : region(r) {
    const double w = r.upper.x - r.lower.x;
    if (r.dimension == 1)
      height = 80.0;
    else
      height = width * (r.upper.y - r.lower.y) / w;
  }

  double sx() const { return width / (region.upper.x - region.lower.x); }
  double x(double v) const { return margin + (v - region.lower.x) * sx(); }
  double y(double v) const {
    if (region.dimension == 1) return margin + height / 2.0;
    return margin + (region.upper.y - v) * height / (region.upper.y - region.lower.y);
  }
  double total_w() const { return width + 2.0 * margin; }
  double total_h() const { return height + 2.0 * margin; }
};

std::string fmt(double v) {
  // Two decimals are plenty for pixel coordinates and keep files small.
  const double r = std::round(v * 100.0) / 100.0;
  return format_double(r == 0.0 ? 0.0 : r);
}

std::string cell_color(Index n) {
  if (n == kUncovered) return "#ffffff";
  const int hue = static_cast<int>(std::fmod(n * 137.508, 360.0));
  return "hsl(" + std::to_string(hue) + ",55%,78%)";
}

}  // namespace

void write_figure_svg(std::ostream& out, const Deployment& dep, const Partition& part,
                      const DensityGrid& grid, const Scenario& sc) {
  const Canvas cv(grid.region);
  const Region& r = grid.region;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(cv.total_w()) << "\" height=\""
      << fmt(cv.total_h()) << "\">\n";

  const std::size_t res = grid.resolution;
  const double dx = (r.upper.x - r.lower.x) / static_cast<double>(res);
  const double cw = dx * cv.sx();
  const double ch = r.dimension == 1 ? cv.height : cv.height / static_cast<double>(res);
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec2 c = grid.centers[i];
    const double px = cv.x(c.x - dx / 2.0);
    const double py = r.dimension == 1 ? cv.margin : cv.y(c.y) - ch / 2.0;
    out << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\"" << fmt(cw + 0.05)
        << "\" height=\"" << fmt(ch + 0.05) << "\" fill=\"" << cell_color(part.assign[i]) << "\"/>\n";
  }
  out << "</g>\n";
  out << "<rect x=\"" << fmt(cv.margin) << "\" y=\"" << fmt(cv.margin) << "\" width=\"" << fmt(cv.width)
      << "\" height=\"" << fmt(cv.height) << "\" fill=\"none\" stroke=\"#444\"/>\n";

  if (sc.sensor_budget) {
    for (std::size_t n = 0; n < dep.p.size(); ++n) {
      if (!dep.active(n)) continue;
      const double rad = sc.sensing_radius(n) * cv.sx();
      out << "<circle cx=\"" << fmt(cv.x(dep.p[n].x)) << "\" cy=\"" << fmt(cv.y(dep.p[n].y)) << "\" r=\""
          << fmt(rad) << "\" fill=\"none\" stroke=\"#3060c0\" stroke-dasharray=\"4 3\"/>\n";
    }
  }

  for (const auto& c : part.centroids) {
    if (!c) continue;
    const double cx = cv.x(c->x), cy = cv.y(c->y);
    out << "<path d=\"M" << fmt(cx - 4) << ' ' << fmt(cy - 4) << "L" << fmt(cx + 4) << ' ' << fmt(cy + 4) << "M"
        << fmt(cx - 4) << ' ' << fmt(cy + 4) << "L" << fmt(cx + 4) << ' ' << fmt(cy - 4)
        << "\" stroke=\"#000\" stroke-width=\"1.2\"/>\n";
  }
  for (Vec2 p : dep.p)
    out << "<rect x=\"" << fmt(cv.x(p.x) - 5) << "\" y=\"" << fmt(cv.y(p.y) - 5)
        << "\" width=\"10\" height=\"10\" fill=\"#d00\" stroke=\"#600\"/>\n";
  for (Vec2 q : dep.q)
    out << "<circle cx=\"" << fmt(cv.x(q.x)) << "\" cy=\"" << fmt(cv.y(q.y)) << "\" r=\"6\" fill=\"#000\"/>\n";
  out << "</svg>\n";
}

void write_curve_svg(std::ostream& out, const TradeoffCurve& curve) {
  const double w = 600.0, h = 400.0, m = 50.0;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w + 2 * m) << "\" height=\""
      << fmt(h + 2 * m) << "\">\n";
  out << "<rect x=\"" << fmt(m) << "\" y=\"" << fmt(m) << "\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  if (!curve.points.empty()) {
    double s0 = curve.points.front().sensor_power, s1 = s0;
    double a0 = curve.points.front().ap_power, a1 = a0;
    for (const auto& p : curve.points) {
      s0 = std::min(s0, p.sensor_power);
      s1 = std::max(s1, p.sensor_power);
      a0 = std::min(a0, p.ap_power);
      a1 = std::max(a1, p.ap_power);
    }
    const double ds = s1 > s0 ? s1 - s0 : 1.0, da = a1 > a0 ? a1 - a0 : 1.0;
    auto px = [&](double s) { return m + (s - s0) / ds * w; };
    auto py = [&](double a) { return m + h - (a - a0) / da * h; };

    out << "<polyline fill=\"none\" stroke=\"#d00\" stroke-width=\"2\" points=\"";
    for (const auto& p : curve.points)
      if (p.on_envelope) out << fmt(px(p.sensor_power)) << ',' << fmt(py(p.ap_power)) << ' ';
    out << "\"/>\n";
    for (const auto& p : curve.points)
      out << "<circle cx=\"" << fmt(px(p.sensor_power)) << "\" cy=\"" << fmt(py(p.ap_power))
          << "\" r=\"3\" fill=\"" << (p.on_envelope ? "#d00" : "#888") << "\"/>\n";
    out << "<text x=\"" << fmt(m) << "\" y=\"" << fmt(h + m + 30) << "\" font-size=\"12\">sensor power "
        << fmt(s0) << " .. " << fmt(s1) << "</text>\n";
    out << "<text x=\"5\" y=\"" << fmt(m - 10) << "\" font-size=\"12\">AP power " << fmt(a0) << " .. "
        << fmt(a1) << "</text>\n";
  }
  out << "</svg>\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  write_file(path, [&](std::ostream& out) { out << text; });
}

}  // namespace twotier
