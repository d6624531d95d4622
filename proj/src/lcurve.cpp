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

#include "dartr/lcurve.hpp"

#include <cmath>
#include <limits>

#include "dartr/csv.hpp"
#include "dartr/errors.hpp"
#include "dartr/svg.hpp"

namespace dartr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log_root(double value) { return 0.5 * std::log(value); }

}  // namespace

std::vector<double> curvature(const std::vector<double>& us, const std::vector<double>& xs,
                              const std::vector<double>& ys) {
  const std::size_t n = us.size();
  if (xs.size() != n || ys.size() != n) throw ParameterError("curvature: length mismatch");
  std::vector<double> out(n, kNaN);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = us[i] - us[i - 1];
    const double hp = us[i + 1] - us[i];
    const double hs = hm + hp;
    auto d1 = [&](const std::vector<double>& f) {
      return -hp / (hm * hs) * f[i - 1] + (hp - hm) / (hm * hp) * f[i] + hm / (hp * hs) * f[i + 1];
    };
    auto d2 = [&](const std::vector<double>& f) {
      return 2.0 * (f[i - 1] / (hm * hs) - f[i] / (hm * hp) + f[i + 1] / (hp * hs));
    };
    const double x1 = d1(xs), y1 = d1(ys), x2 = d2(xs), y2 = d2(ys);
    const double speed = x1 * x1 + y1 * y1;
    const double k = (x1 * y2 - y1 * x2) / std::pow(speed, 1.5);
    if (std::isfinite(k)) out[i] = k;
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw ParameterError("log_grid: need 0 < lo < hi and count >= 2");
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::pair<double, double> lambda_range(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum,
                                       RegularizerKind kind) {
  if (kind == RegularizerKind::rkhs) {
    if (spectrum.rank == 0) throw DegenerateProblemError("lambda range: no positive eigenvalue");
    return {spectrum.eigenvalues[spectrum.rank - 1], spectrum.eigenvalues[0]};
  }
  const Vector eig = symmetric_eigenvalues(triplet.A);
  const double top = eig.size() > 0 ? eig[0] : 0.0;
  if (!(top > 0.0)) throw DegenerateProblemError("lambda range: A has no positive eigenvalue");
  const double tau = top * static_cast<double>(eig.size()) * std::numeric_limits<double>::epsilon();
  double low = top;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (eig[i] > tau) low = eig[i];
  }
  return {low, top};
}

LCurve build_lcurve(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum, RegularizerKind kind,
                    std::size_t grid_size) {
  if (grid_size < 10) throw ParameterError("build_lcurve: grid_size must be at least 10");
  auto [lo, hi] = lambda_range(triplet, spectrum, kind);
  if (!(hi > lo)) {
    // A single positive eigenvalue still gets a proper grid around it.
    lo = hi * 1e-3;
  }

  LCurve curve;
  curve.kind = kind;
  curve.lambdas = log_grid(lo, hi, grid_size);
  curve.xs.reserve(grid_size);
  curve.ys.reserve(grid_size);
  if (kind == RegularizerKind::rkhs) {
    const TransformedSystem system = transformed_system(triplet, spectrum);
    for (double lambda : curve.lambdas) {
      const auto sol = rkhs_solve(triplet, system, lambda);
      curve.xs.push_back(log_root(sol.loss_value));
      curve.ys.push_back(log_root(sol.penalty_value));
    }
  } else {
    for (double lambda : curve.lambdas) {
      const auto sol = solve_tikhonov(triplet, spectrum, kind, lambda);
      curve.xs.push_back(log_root(sol.loss_value));
      curve.ys.push_back(log_root(sol.penalty_value));
    }
  }
  const LambdaSelection pick = select_lambda(curve);
  std::vector<double> us(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) us[i] = std::log(curve.lambdas[i]);
  curve.curvatures = curvature(us, curve.xs, curve.ys);
  curve.selected_index = pick.index;
  return curve;
}

LambdaSelection select_lambda(const LCurve& curve) {
  const std::size_t n = curve.lambdas.size();
  if (n < 3) throw ParameterError("select_lambda: need at least three grid points");
  std::vector<double> us(n);
  for (std::size_t i = 0; i < n; ++i) us[i] = std::log(curve.lambdas[i]);
  const std::vector<double> k = curvature(us, curve.xs, curve.ys);
  LambdaSelection best;
  bool found = false;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::isnan(k[i])) continue;
    if (!found || k[i] > best.curvature) {
      best = {i, curve.lambdas[i], k[i]};
      found = true;
    }
  }
  if (!found) throw SelectionError("select_lambda: curvature is undefined at every interior point");
  return best;
}

void write_lcurve_csv(const std::string& path, const LCurve& curve) {
  CsvWriter writer({"lambda", "log_resid", "log_penalty", "curvature"});
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double k = i < curve.curvatures.size() ? curve.curvatures[i] : kNaN;
    writer.add_row({curve.lambdas[i], curve.xs[i], curve.ys[i], k});
  }
  writer.save(path);
}

std::string lcurve_svg(const LCurve& curve) {
  PlotSeries line{std::string(to_string(curve.kind)), curve.xs, curve.ys, true};
  std::vector<PlotSeries> series{line};
  if (curve.selected_index < curve.size()) {
    const double x = curve.xs[curve.selected_index], y = curve.ys[curve.selected_index];
    series.push_back({"selected", {x, x}, {y, y}, true});
  }
  PlotOptions options;
  options.title = "L-curve";
  options.x_label = "log residual norm";
  options.y_label = "log penalty norm";
  return emit_svg_plot(series, options);
}

}  // namespace dartr
