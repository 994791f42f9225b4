#include "fjc/io/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fjc::io {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round tick step to 1, 2 or 5 times a power of ten.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

}  // namespace

std::string render_svg_plot(const PlotSpec& spec, const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("series '" + s.label + "': x/y length mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x1 >= x0)) throw std::invalid_argument("no finite data to plot");
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 - y0 < 1e-12 * std::max(1.0, std::abs(y0))) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  const double left = 64, right = 16, top = 32, bottom = 44;
  const double w = spec.width - left - right, h = spec.height - top - bottom;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * w; };
  auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * h; };

  std::ostringstream o;
  o.precision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << spec.width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" << escape(spec.title)
    << "</text>\n";
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double xs = nice_step(x1 - x0, 8), ys = nice_step(y1 - y0, 6);
  for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
    o << "<line x1=\"" << px(t) << "\" y1=\"" << top + h << "\" x2=\"" << px(t) << "\" y2=\"" << top + h + 4
      << "\" stroke=\"black\"/><text x=\"" << px(t) << "\" y=\"" << top + h + 16 << "\" text-anchor=\"middle\">"
      << (std::abs(t) < 1e-12 * xs ? 0.0 : t) << "</text>\n";
  }
  for (double v = std::ceil(y0 / ys) * ys; v <= y1 + 1e-9 * ys; v += ys) {
    o << "<line x1=\"" << left - 4 << "\" y1=\"" << py(v) << "\" x2=\"" << left << "\" y2=\"" << py(v)
      << "\" stroke=\"black\"/><text x=\"" << left - 6 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\">"
      << (std::abs(v) < 1e-12 * ys ? 0.0 : v) << "</text>\n";
  }
  o << "<text x=\"" << left + w / 2 << "\" y=\"" << spec.height - 8 << "\" text-anchor=\"middle\">"
    << escape(spec.x_label) << "</text>\n";
  o << "<text transform=\"translate(14," << top + h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(spec.y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    o << "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"" << colour << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) o << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    o << "\"/>\n";
    if (!s.label.empty()) {
      const double ly = top + 14 + 14 * static_cast<double>(k);
      o << "<line x1=\"" << left + w - 110 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + w - 90 << "\" y2=\""
        << ly - 4 << "\" stroke=\"" << colour << "\"/><text x=\"" << left + w - 86 << "\" y=\"" << ly << "\">"
        << escape(s.label) << "</text>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

bool write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<Series>& series) noexcept {
  try {
    const std::string svg = render_svg_plot(spec, series);
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << svg;
    return static_cast<bool>(out);
  } catch (...) {
    return false;
  }
}

}  // namespace fjc::io
