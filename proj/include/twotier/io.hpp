#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "twotier/analytic.hpp"
#include "twotier/model.hpp"
#include "twotier/optimize.hpp"
#include "twotier/scene.hpp"

namespace twotier {

/// Shortest text that reads back to the same double.
std::string format_double(double v);

void write_trace_csv(std::ostream& out, const RunTrace& trace);
void write_partition_csv(std::ostream& out, const DensityGrid& grid, const Partition& part);
void write_tradeoff_csv(std::ostream& out, const TradeoffCurve& curve);

nlohmann::json deployment_json(const Deployment& dep);
Deployment deployment_from_json(const nlohmann::json& j);

/// Cells filled by AP color, APs as red squares, FCs as black circles and
/// cell centroids as crosses. With a sensor budget each active AP also gets
/// its coverage disk.
void write_figure_svg(std::ostream& out, const Deployment& dep, const Partition& part,
                      const DensityGrid& grid, const Scenario& sc);

void write_curve_svg(std::ostream& out, const TradeoffCurve& curve);

/// Opens `path` for writing or throws IoError; `fill` writes the content.
template <class Fill>
void write_file(const std::filesystem::path& path, Fill&& fill);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace twotier

#include <fstream>

#include "twotier/errors.hpp"

template <class Fill>
void twotier::write_file(const std::filesystem::path& path, Fill&& fill) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  fill(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}
