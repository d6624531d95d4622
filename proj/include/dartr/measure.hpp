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

#include "dartr/mesh_kernel.hpp"

namespace dartr {

/// Data-adaptive weight on the source mesh: how strongly the kernel, sampled
/// at the observation points, touches each source point.
struct ExplorationMeasure {
  Vector weights;             // rho(s_k), sums to one
  Vector density;             // d rho / d nu at s_k, i.e. weights / delta_k
  std::vector<bool> support;  // rho(s_k) > 1e-14 * max rho
  double normalizer = 0.0;    // Z

  Eigen::Index size() const { return weights.size(); }
  std::vector<Eigen::Index> support_indices() const;
};

/// rho(s_k) = delta_k * sum_i |K(t_i, s_k)| mu_i / Z. Throws
/// DegenerateProblemError when every kernel column vanishes.
ExplorationMeasure exploration_measure(const DiscretizedProblem& problem);

/// B = diag(rho(s_k)).
Matrix basis_matrix(const ExplorationMeasure& measure);

/// phi^T B psi.
double l2rho_inner(const Vector& phi, const Vector& psi, const Matrix& B);
double l2rho_norm_sq(const Vector& phi, const Matrix& B);

/// Two-column CSV (s, rho).
void write_measure_csv(const std::string& path, const Mesh& source, const ExplorationMeasure& measure);

}  // namespace dartr
