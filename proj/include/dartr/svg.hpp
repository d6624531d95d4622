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

#pragma once

#include <string>
#include <vector>

namespace dartr {

enum class AxisScale { linear, log };

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  AxisScale x_scale = AxisScale::linear;
  AxisScale y_scale = AxisScale::linear;
  int width = 640;
  int height = 420;
};

/// Self-contained SVG: one polyline per series, axes with tick labels and a
/// legend. Log axes place ticks at powers of ten. Throws ParameterError for
/// no series or mismatched lengths and DomainError naming the series for a
/// nonpositive value on a log axis.
std::string emit_svg_plot(const std::vector<PlotSeries>& series, const PlotOptions& options = {});

}  // namespace dartr
