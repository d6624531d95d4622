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

#include "dartr/measure.hpp"

#include "dartr/csv.hpp"
#include "dartr/errors.hpp"

namespace dartr {

std::vector<Eigen::Index> ExplorationMeasure::support_indices() const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index k = 0; k < size(); ++k) {
    if (support[k]) out.push_back(k);
  }
  return out;
}

ExplorationMeasure exploration_measure(const DiscretizedProblem& problem) {
  const Vector& mu = problem.obs.weights();
  const Vector& delta = problem.source.weights();
  // Unnormalized density: sum_i |K(t_i, s_k)| mu_i.
  const Vector mass = problem.kernel_values.cwiseAbs().transpose() * mu;
  const double z = mass.dot(delta);
  if (!(z > 0.0)) throw DegenerateProblemError("kernel vanishes on every source point");

  ExplorationMeasure measure;
  measure.normalizer = z;
  measure.density = mass / z;
  measure.weights = measure.density.cwiseProduct(delta);
  // Renormalize so the total is one to rounding, independent of the order of
  // the dot product above.
  measure.weights /= measure.weights.sum();
  const double threshold = 1e-14 * measure.weights.maxCoeff();
  measure.support.resize(measure.size());
  for (Eigen::Index k = 0; k < measure.size(); ++k) {
    measure.support[k] = measure.weights[k] > threshold;
  }
  return measure;
}

Matrix basis_matrix(const ExplorationMeasure& measure) { return measure.weights.asDiagonal(); }

double l2rho_inner(const Vector& phi, const Vector& psi, const Matrix& B) {
  if (phi.size() != B.rows() || psi.size() != B.rows() || B.rows() != B.cols()) {
    throw ParameterError("l2rho_inner: dimension mismatch");
  }
  return phi.dot(B * psi);
}

double l2rho_norm_sq(const Vector& phi, const Matrix& B) { return l2rho_inner(phi, phi, B); }

void write_measure_csv(const std::string& path, const Mesh& source, const ExplorationMeasure& measure) {
  CsvWriter writer({"s", "rho"});
  for (Eigen::Index k = 0; k < measure.size(); ++k) {
    writer.add_row({source.points()[k], measure.weights[k]});
  }
  writer.save(path);
}

}  // namespace dartr
