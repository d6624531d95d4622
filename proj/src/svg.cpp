/*
 * Copyright 2026 The dartr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "dartr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "dartr/errors.hpp"

namespace dartr {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  AxisScale scale;
  double lo = 0.0;
  double hi = 1.0;

  double map(double v) const { return scale == AxisScale::log ? std::log10(v) : v; }

  void fit(double vmin, double vmax) {
    lo = map(vmin);
    hi = map(vmax);
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(lo))) {
      lo -= 0.5;
      hi += 0.5;
    }
    if (scale == AxisScale::log) {
      lo = std::floor(lo);
      hi = std::ceil(hi);
    } else {
      const double pad = 0.05 * (hi - lo);
      lo -= pad;
      hi += pad;
    }
  }

  // Tick positions in mapped coordinates.
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (scale == AxisScale::log) {
      const int span = static_cast<int>(hi - lo);
      const int step = std::max(1, span / 8);
      for (double e = lo; e <= hi + 1e-9; e += step) out.push_back(e);
      return out;
    }
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 5.0, 10.0}) {
      step = f * mag;
      if (step >= raw) break;
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) out.push_back(v);
    return out;
  }

  std::string label(double mapped) const {
    if (scale == AxisScale::log) return "1e" + std::to_string(static_cast<int>(std::lround(mapped)));
    return tick_label(std::abs(mapped) < 1e-12 * (hi - lo) ? 0.0 : mapped);
  }
};

}  // namespace

std::string emit_svg_plot(const std::vector<PlotSeries>& series, const PlotOptions& options) {
  if (series.empty()) throw ParameterError("emit_svg_plot: no series");
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw ParameterError("series '" + s.name + "': x and y lengths differ");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (options.x_scale == AxisScale::log && s.x[i] <= 0.0) {
        throw DomainError("series '" + s.name + "' has a nonpositive x value on a log axis");
      }
      if (options.y_scale == AxisScale::log && s.y[i] <= 0.0) {
        throw DomainError("series '" + s.name + "' has a nonpositive y value on a log axis");
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmin <= xmax)) {
    xmin = options.x_scale == AxisScale::log ? 1.0 : 0.0;
    xmax = xmin + 1.0;
    ymin = options.y_scale == AxisScale::log ? 1.0 : 0.0;
    ymax = ymin + 1.0;
  }

  Axis xa{options.x_scale}, ya{options.y_scale};
  xa.fit(xmin, xmax);
  ya.fit(ymin, ymax);

  const double W = options.width, H = options.height;
  const double left = 70, right = 150, top = 36, bottom = 50;
  const double pw = W - left - right, ph = H - top - bottom;
  auto px = [&](double v) { return left + (xa.map(v) - xa.lo) / (xa.hi - xa.lo) * pw; };
  auto py = [&](double v) { return top + ph - (ya.map(v) - ya.lo) / (ya.hi - ya.lo) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(options.title) << "</text>\n";
  }
  svg << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw) << "\" height=\""
      << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  svg << "<g font-size=\"11\" stroke-width=\"0.5\">\n";
  for (double t : xa.ticks()) {
    const double x = left + (t - xa.lo) / (xa.hi - xa.lo) * pw;
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(top + ph) << "\" x2=\"" << fmt(x) << "\" y2=\""
        << fmt(top + ph + 5) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(top + ph + 18) << "\" text-anchor=\"middle\">"
        << xa.label(t) << "</text>\n";
  }
  for (double t : ya.ticks()) {
    const double y = top + ph - (t - ya.lo) / (ya.hi - ya.lo) * ph;
    svg << "<line x1=\"" << fmt(left - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(left) << "\" y2=\""
        << fmt(y) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">" << ya.label(t)
        << "</text>\n";
  }
  svg << "</g>\n";
  if (!options.x_label.empty()) {
    svg << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(H - 10)
        << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(options.x_label) << "</text>\n";
  }
  if (!options.y_label.empty()) {
    svg << "<text transform=\"translate(16 " << fmt(top + ph / 2)
        << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << escape(options.y_label) << "</text>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      svg << (first ? "" : " ") << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i]));
      first = false;
    }
    svg << "\"/>\n";
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        svg << "<circle cx=\"" << fmt(px(s.x[i])) << "\" cy=\"" << fmt(py(s.y[i])) << "\" r=\"2\" fill=\""
            << color << "\"/>\n";
      }
    }
    const double ly = top + 14 + 18.0 * static_cast<double>(k);
    svg << "<line x1=\"" << fmt(left + pw + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(left + pw + 32)
        << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
    svg << "<text x=\"" << fmt(left + pw + 38) << "\" y=\"" << fmt(ly + 4) << "\" font-size=\"11\">"
        << escape(s.name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace dartr
