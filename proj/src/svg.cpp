#include "sigscope/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sigscope {

namespace {

constexpr double kWidth = 900.0, kHeight = 640.0, kMargin = 60.0;
constexpr int kCurveSteps = 256;

const std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                              "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                              "#bcbd22", "#17becf"};

const char* cluster_color(int id) {
  return kPalette[static_cast<std::size_t>(id) % kPalette.size()];
}

std::string fmt(double v, const char* spec = "%.2f") {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), spec, v);
  return buffer;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Bounds {
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  bool has_data = false;

  void add(double x, double y) {
    if (!has_data) {
      x_min = x_max = x;
      y_min = y_max = y;
      has_data = true;
      return;
    }
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
};

struct Scale {
  double x0 = 0.0, y0 = 0.0, sx = 1.0, sy = 1.0;

  double px(double x) const { return kMargin + (x - x0) * sx; }
  double py(double y) const { return kHeight - kMargin - (y - y0) * sy; }
};

std::pair<double, double> curve_domain(const FittedCurve<double>& curve) {
  const double range = curve.x_max > curve.x_min ? curve.x_max - curve.x_min : 1.0;
  return {curve.x_min - 0.1 * range, curve.x_max + 0.1 * range};
}

} // namespace

std::string render_svg(const Embedding& embedding,
                       const std::map<int, ConfidenceBand<double>>& bands,
                       const std::map<int, ConfidenceEllipse<double>>& ellipses,
                       const OutlierReport& report) {
  Bounds bounds;
  for (Eigen::Index i = 0; i < embedding.coords.rows(); ++i)
    bounds.add(embedding.coords(i, 0), embedding.coords(i, 1));
  for (const auto& [id, band] : bands) {
    const auto [lo, hi] = curve_domain(band.curve);
    for (int s = 0; s <= kCurveSteps; ++s) {
      const double x = lo + (hi - lo) * s / kCurveSteps;
      const double hw = band_half_width(band, x);
      bounds.add(x, band.curve(x) - hw);
      bounds.add(x, band.curve(x) + hw);
    }
  }
  for (const auto& [id, e] : ellipses) {
    bounds.add(e.center_x - e.semi_axis_x, e.center_y - e.semi_axis_y);
    bounds.add(e.center_x + e.semi_axis_x, e.center_y + e.semi_axis_y);
  }
  if (!bounds.has_data) {
    bounds.add(0.0, 0.0);
    bounds.add(1.0, 1.0);
  }

  double span_x = bounds.x_max - bounds.x_min;
  double span_y = bounds.y_max - bounds.y_min;
  if (span_x <= 0.0) span_x = 1.0;
  if (span_y <= 0.0) span_y = 1.0;
  Scale scale;
  scale.x0 = bounds.x_min - 0.05 * span_x;
  scale.y0 = bounds.y_min - 0.05 * span_y;
  scale.sx = (kWidth - 2 * kMargin) / (1.1 * span_x);
  scale.sy = (kHeight - 2 * kMargin) / (1.1 * span_y);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth, "%.0f")
      << "\" height=\"" << fmt(kHeight, "%.0f") << "\" viewBox=\"0 0 " << fmt(kWidth, "%.0f")
      << " " << fmt(kHeight, "%.0f") << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kWidth, "%.0f") << "\" height=\""
      << fmt(kHeight, "%.0f") << "\" fill=\"#ffffff\"/>\n";

  // Axes with 5 ticks per side.
  svg << "<g class=\"axes\" stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n";
  svg << "<line x1=\"" << fmt(kMargin) << "\" y1=\"" << fmt(kHeight - kMargin) << "\" x2=\""
      << fmt(kWidth - kMargin) << "\" y2=\"" << fmt(kHeight - kMargin) << "\"/>\n";
  svg << "<line x1=\"" << fmt(kMargin) << "\" y1=\"" << fmt(kMargin) << "\" x2=\""
      << fmt(kMargin) << "\" y2=\"" << fmt(kHeight - kMargin) << "\"/>\n";
  svg << "</g>\n";
  svg << "<g class=\"ticks\" font-family=\"monospace\" font-size=\"11\" fill=\"#333333\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = scale.x0 + (t / 4.0) * 1.1 * span_x;
    const double fy = scale.y0 + (t / 4.0) * 1.1 * span_y;
    svg << "<text x=\"" << fmt(scale.px(fx)) << "\" y=\"" << fmt(kHeight - kMargin + 16)
        << "\" text-anchor=\"middle\">" << fmt(fx, "%.4g") << "</text>\n";
    svg << "<text x=\"" << fmt(kMargin - 8) << "\" y=\"" << fmt(scale.py(fy) + 4)
        << "\" text-anchor=\"end\">" << fmt(fy, "%.4g") << "</text>\n";
  }
  svg << "</g>\n";

  for (const auto& [id, e] : ellipses) {
    svg << "<ellipse class=\"ellipse c" << id << "\" cx=\"" << fmt(scale.px(e.center_x))
        << "\" cy=\"" << fmt(scale.py(e.center_y)) << "\" rx=\""
        << fmt(e.semi_axis_x * scale.sx) << "\" ry=\"" << fmt(e.semi_axis_y * scale.sy)
        << "\" fill=\"none\" stroke=\"" << cluster_color(id)
        << "\" stroke-width=\"1\" stroke-opacity=\"0.7\"/>\n";
  }

  for (const auto& [id, band] : bands) {
    const auto [lo, hi] = curve_domain(band.curve);
    std::ostringstream center, upper, lower;
    for (int s = 0; s <= kCurveSteps; ++s) {
      const double x = lo + (hi - lo) * s / kCurveSteps;
      const double y = band.curve(x);
      const double hw = band_half_width(band, x);
      const char* sep = s == 0 ? "" : " ";
      center << sep << fmt(scale.px(x)) << ',' << fmt(scale.py(y));
      upper << sep << fmt(scale.px(x)) << ',' << fmt(scale.py(y + hw));
      lower << sep << fmt(scale.px(x)) << ',' << fmt(scale.py(y - hw));
    }
    svg << "<polyline class=\"band-upper c" << id << "\" fill=\"none\" stroke=\""
        << cluster_color(id) << "\" stroke-width=\"1\" stroke-dasharray=\"6 4\" points=\""
        << upper.str() << "\"/>\n";
    svg << "<polyline class=\"band-lower c" << id << "\" fill=\"none\" stroke=\""
        << cluster_color(id) << "\" stroke-width=\"1\" stroke-dasharray=\"6 4\" points=\""
        << lower.str() << "\"/>\n";
    svg << "<polyline class=\"curve c" << id << "\" fill=\"none\" stroke=\""
        << cluster_color(id) << "\" stroke-width=\"1.5\" points=\"" << center.str()
        << "\"/>\n";
  }

  for (std::size_t i = 0; i < embedding.labels.size(); ++i) {
    const double x = embedding.coords(static_cast<Eigen::Index>(i), 0);
    const double y = embedding.coords(static_cast<Eigen::Index>(i), 1);
    const auto it = embedding.cluster.find(embedding.labels[i]);
    const int id = it == embedding.cluster.end() ? 0 : it->second;
    svg << "<circle class=\"pt c" << id << "\" cx=\"" << fmt(scale.px(x)) << "\" cy=\""
        << fmt(scale.py(y)) << "\" r=\"3\" fill=\"" << cluster_color(id) << "\"/>\n";
  }

  // One glyph per non-Inlier verdict: cross = absolute, square = valid,
  // diamond = ambiguous.
  std::map<std::string, std::pair<double, double>> position;
  for (std::size_t i = 0; i < embedding.labels.size(); ++i)
    position[embedding.labels[i]] = {embedding.coords(static_cast<Eigen::Index>(i), 0),
                                     embedding.coords(static_cast<Eigen::Index>(i), 1)};
  for (const auto& v : report.verdicts) {
    if (v.cls == OutlierClass::Inlier) continue;
    const auto it = position.find(v.label);
    if (it == position.end()) continue;
    const double cx = scale.px(it->second.first);
    const double cy = scale.py(it->second.second);
    if (v.cls == OutlierClass::Absolute) {
      svg << "<path class=\"marker-absolute\" stroke=\"#000000\" stroke-width=\"1.5\" "
             "fill=\"none\" d=\"M "
          << fmt(cx - 6) << ' ' << fmt(cy - 6) << " L " << fmt(cx + 6) << ' ' << fmt(cy + 6)
          << " M " << fmt(cx - 6) << ' ' << fmt(cy + 6) << " L " << fmt(cx + 6) << ' '
          << fmt(cy - 6) << "\"/>\n";
    } else if (v.cls == OutlierClass::Valid) {
      svg << "<path class=\"marker-valid\" stroke=\"#000000\" stroke-width=\"1.5\" "
             "fill=\"none\" d=\"M "
          << fmt(cx - 6) << ' ' << fmt(cy - 6) << " H " << fmt(cx + 6) << " V " << fmt(cy + 6)
          << " H " << fmt(cx - 6) << " Z\"/>\n";
    } else {
      svg << "<path class=\"marker-ambiguous\" stroke=\"#000000\" stroke-width=\"1.5\" "
             "fill=\"none\" d=\"M "
          << fmt(cx) << ' ' << fmt(cy - 8) << " L " << fmt(cx + 8) << ' ' << fmt(cy) << " L "
          << fmt(cx) << ' ' << fmt(cy + 8) << " L " << fmt(cx - 8) << ' ' << fmt(cy)
          << " Z\"/>\n";
    }
    svg << "<text class=\"outlier-label\" font-family=\"monospace\" font-size=\"11\" "
           "fill=\"#000000\" x=\""
        << fmt(cx + 9) << "\" y=\"" << fmt(cy - 9) << "\">" << escape(v.label) << "</text>\n";
  }
  for (const auto& s : report.known_singletons) {
    const auto it = position.find(s.label);
    if (it == position.end()) continue;
    svg << "<text class=\"singleton-label\" font-family=\"monospace\" font-size=\"11\" "
           "fill=\"#555555\" x=\""
        << fmt(scale.px(it->second.first) + 9) << "\" y=\""
        << fmt(scale.py(it->second.second) - 9) << "\">" << escape(s.label) << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

} // namespace sigscope
