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

#include "dartr/regularize.hpp"

namespace dartr {

/// Log-log curve (x, y) with x^2 = loss(phi_lambda) and y^2 = phi_lambda^T C
/// phi_lambda over an ascending lambda grid.
struct LCurve {
  RegularizerKind kind = RegularizerKind::rkhs;
  std::vector<double> lambdas;
  std::vector<double> xs;           // log x(lambda)
  std::vector<double> ys;           // log y(lambda)
  std::vector<double> curvatures;   // NaN at the endpoints
  std::size_t selected_index = 0;

  std::size_t size() const { return lambdas.size(); }
  double selected_lambda() const { return lambdas.at(selected_index); }
};

struct LambdaSelection {
  std::size_t index = 0;
  double lambda = 0.0;
  double curvature = 0.0;
};

/// Signed curvature (x'y'' - y'x'') / (x'^2 + y'^2)^{3/2} of the planar curve
/// (xs, ys) parameterized by `us`, with three-point centered differences.
/// Endpoints and points touching a non-finite value get NaN.
std::vector<double> curvature(const std::vector<double>& us, const std::vector<double>& xs,
                              const std::vector<double>& ys);

/// Log-uniform grid of `count` points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// The lambda range: the positive part of Lambda for rkhs, of eig(A) above
/// lambda_1 n eps for l2 and L2rho. Throws DegenerateProblemError when empty.
std::pair<double, double> lambda_range(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum,
                                       RegularizerKind kind);

/// Solves the regularized problem at each grid point and selects the
/// maximum-curvature lambda. Throws ParameterError for grid_size < 10.
LCurve build_lcurve(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum, RegularizerKind kind,
                    std::size_t grid_size = 100);

/// Recomputes the curvature in u = log lambda and returns the interior
/// argmax, smallest lambda on ties. Throws ParameterError below three points
/// and SelectionError when no interior curvature is finite.
LambdaSelection select_lambda(const LCurve& curve);

/// CSV (lambda, log_resid, log_penalty, curvature).
void write_lcurve_csv(const std::string& path, const LCurve& curve);
std::string lcurve_svg(const LCurve& curve);

}  // namespace dartr
