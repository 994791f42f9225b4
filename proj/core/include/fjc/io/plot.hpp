#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fjc::io {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label = "t";
  std::string y_label;
  int width = 720;
  int height = 360;
};

/// Static SVG line chart. Returns false (and writes nothing) on failure
/// instead of throwing, so callers can ignore plotting problems.
bool write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<Series>& series) noexcept;

std::string render_svg_plot(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace fjc::io
