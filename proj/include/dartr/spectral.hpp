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

#include "dartr/measure.hpp"
#include "dartr/mesh_kernel.hpp"

namespace dartr {

/// Generalized eigenpairs of (A, B): A V = B V Lambda, V^T B V = I on the
/// support of B.
///
/// Eigenvalues are sorted nonincreasing and clamped at zero. The first
/// `support_size` columns of V come from the whitened symmetric problem; any
/// remaining columns are unit vectors of coordinates where B vanishes, with
/// eigenvalue zero. Each column is signed so that its largest-magnitude entry
/// is positive.
struct GeneralizedSpectrum {
  Vector eigenvalues;
  Matrix eigenvectors;
  Eigen::Index rank = 0;  // #{lambda_i > rank_threshold}
  double rank_threshold = 0.0;
  Eigen::Index support_size = 0;

  Eigen::Index size() const { return eigenvalues.size(); }
  auto positive_values() const { return eigenvalues.head(rank); }
  auto positive_vectors() const { return eigenvectors.leftCols(rank); }
};

/// Whitens by B^{-1/2} on the support of the diagonal B and solves the
/// symmetric eigenproblem. The rank threshold is max(lambda_1 n eps,
/// `rank_threshold_override`). Throws DegenerateProblemError when B vanishes.
GeneralizedSpectrum generalized_eigen(const Matrix& A, const Matrix& B,
                                      double rank_threshold_override = 0.0);

/// Eigenvalues of a symmetric matrix, nonincreasing.
Vector symmetric_eigenvalues(const Matrix& A);

/// Gbar(s_j, s_k) = G(s_j, s_k) / (rho'(s_j) rho'(s_k)) restricted to the
/// support, where G(s_j, s_k) = sum_i K(t_i, s_j) K(t_i, s_k) mu_i and rho' is
/// the density d rho / d nu.
struct GbarMatrix {
  Matrix values;                        // support x support
  std::vector<Eigen::Index> indices;    // source index of each row
};

GbarMatrix gbar_matrix(const DiscretizedProblem& problem, const ExplorationMeasure& measure);

/// G(s_j, s_k) on the full source mesh.
Matrix g_matrix(const DiscretizedProblem& problem);

struct TraceIdentity {
  double lhs = 0.0;  // sum of eigenvalues
  double rhs = 0.0;  // sum_k Gbar(s_k, s_k) rho(s_k)
  double relative_error = 0.0;
};

TraceIdentity trace_identity(const GeneralizedSpectrum& spectrum, const GbarMatrix& gbar,
                             const ExplorationMeasure& measure);

/// Coefficients c_i = <phi, psi_i>_{L2rho} for i < rank.
Vector fsoi_coefficients(const Vector& phi, const GeneralizedSpectrum& spectrum, const Matrix& B);

/// P_H phi = sum_{i<rank} <phi, psi_i> psi_i.
Vector fsoi_project(const Vector& phi, const GeneralizedSpectrum& spectrum, const Matrix& B);

/// || P_H phi_hat - P_H phi_true ||^2_{L2rho}.
double projected_error(const Vector& phi_hat, const Vector& phi_true,
                       const GeneralizedSpectrum& spectrum, const Matrix& B);

/// CSV (i, lambda_i) with 1-based i.
void write_spectrum_csv(const std::string& path, const Vector& eigenvalues);
/// One row per source point, one column per eigenvector.
void write_eigenvectors_csv(const std::string& path, const Matrix& eigenvectors);

}  // namespace dartr
