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

#include "dartr/mesh_kernel.hpp"

namespace dartr {

/// Inner product used on the observation space.
///   euclidean:     <u, v> = u^T v (the discrete loss ||y - L phi||^2)
///   mesh_weighted: <u, v> = u^T diag(mu) v (the Riemann-sum L^2_mu metric)
enum class ObservationMetric { euclidean, mesh_weighted };

/// Normal matrix, right-hand side and basis matrix of the least squares
/// problem, plus ||y||^2 for loss evaluation.
struct RegressionTriplet {
  Matrix A;
  Vector b;
  Matrix B;
  double y_norm_sq = 0.0;

  Eigen::Index n() const { return b.size(); }
};

/// A = L^T W L, b = L^T W y with W = I or diag(mu). Throws StateError if the
/// problem has no observations.
RegressionTriplet assemble_triplet(const DiscretizedProblem& problem, const Matrix& B,
                                   ObservationMetric metric = ObservationMetric::euclidean);

/// ||y||^2 - 2 b^T phi + phi^T A phi, floored at zero once it falls inside
/// the rounding band -1e-9 ||y||^2.
double loss(const RegressionTriplet& triplet, const Vector& phi);

}  // namespace dartr
