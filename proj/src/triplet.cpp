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

#include "dartr/triplet.hpp"

#include <algorithm>

#include "dartr/errors.hpp"

namespace dartr {

RegressionTriplet assemble_triplet(const DiscretizedProblem& problem, const Matrix& B,
                                   ObservationMetric metric) {
  if (!problem.observations) throw StateError("assemble_triplet: problem has no observations");
  const Vector& y = *problem.observations;
  if (y.size() != problem.m()) throw ParameterError("observation length must equal m");
  if (B.rows() != problem.n() || B.cols() != problem.n()) throw ParameterError("B must be n x n");

  RegressionTriplet triplet;
  triplet.B = B;
  const Matrix& L = problem.forward;
  if (metric == ObservationMetric::euclidean) {
    triplet.A.noalias() = L.transpose() * L;
    triplet.b.noalias() = L.transpose() * y;
    triplet.y_norm_sq = y.squaredNorm();
  } else {
    const Vector& mu = problem.obs.weights();
    const Matrix weighted = mu.cwiseSqrt().asDiagonal() * L;
    triplet.A.noalias() = weighted.transpose() * weighted;
    triplet.b.noalias() = L.transpose() * mu.cwiseProduct(y);
    triplet.y_norm_sq = y.cwiseProduct(mu).dot(y);
  }
  // Exact symmetry; the product above is symmetric only to rounding.
  triplet.A = 0.5 * (triplet.A + triplet.A.transpose()).eval();
  return triplet;
}

double loss(const RegressionTriplet& triplet, const Vector& phi) {
  if (phi.size() != triplet.n()) throw ParameterError("loss: phi has wrong length");
  const double value = triplet.y_norm_sq - 2.0 * triplet.b.dot(phi) + phi.dot(triplet.A * phi);
  return std::max(value, 0.0);
}

}  // namespace dartr
