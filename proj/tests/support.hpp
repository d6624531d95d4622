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

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "dartr/mesh_kernel.hpp"
#include "dartr/regularize.hpp"

namespace dartr::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline Vector normal_vector(Rng& rng, Eigen::Index size) {
  std::normal_distribution<double> normal;
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = normal(rng);
  return v;
}

inline Matrix normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  Matrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = normal(rng);
  }
  return out;
}

inline double relative_error(const Vector& x, const Vector& reference) {
  const double scale = reference.norm();
  return scale > 0.0 ? (x - reference).norm() / scale : x.norm();
}

/// Tabulated Gaussian kernel on uniform meshes of (0, 1] and (0, 1].
inline DiscretizedProblem random_problem(Rng& rng, Eigen::Index m, Eigen::Index n) {
  return make_problem(Mesh::uniform(0.0, 1.0, n), Mesh::uniform(0.0, 1.0, m),
                      KernelSpec::tabulated(normal_matrix(rng, m, n)));
}

/// Problem plus observations y = L phi + noise.
inline DiscretizedProblem random_observed_problem(Rng& rng, Eigen::Index m, Eigen::Index n, double noise = 0.1) {
  DiscretizedProblem p = random_problem(rng, m, n);
  const Vector phi = normal_vector(rng, n);
  const Vector y = p.forward * phi + noise * normal_vector(rng, m);
  return with_data(std::move(p), {y, noise});
}

/// Triplet with a prescribed generalized spectrum: B = diag(rho), V = B^{-1/2} Q,
/// A = B V Lambda V^T B, and b = A phi_true + B V (sigma lambda^{1/2} xi), which
/// is the discrete form of phi^y = L_Gbar phi_true + phi^sigma.
struct SyntheticProblem {
  RegressionTriplet triplet;
  Matrix V;
  Vector lambdas;
  Vector coefficients;
  Vector xi;
  Vector phi_true;
  double sigma = 0.0;
};

inline SyntheticProblem synthetic_problem(Rng& rng, Eigen::Index n, double sigma) {
  SyntheticProblem s;
  Vector rho(n);
  for (Eigen::Index k = 0; k < n; ++k) rho[k] = uniform(rng, 0.5, 1.5);
  rho /= rho.sum();
  const Matrix B = rho.asDiagonal();
  const Matrix Q = Eigen::HouseholderQR<Matrix>(normal_matrix(rng, n, n)).householderQ();
  s.V = rho.cwiseSqrt().cwiseInverse().asDiagonal() * Q;
  s.lambdas.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) s.lambdas[i] = std::pow(10.0, -3.0 * static_cast<double>(i) / static_cast<double>(n - 1));
  s.coefficients = normal_vector(rng, n);
  s.xi = normal_vector(rng, n);
  s.sigma = sigma;
  s.phi_true = s.V * s.coefficients;
  const Matrix BV = B * s.V;
  s.triplet.B = B;
  s.triplet.A = BV * s.lambdas.asDiagonal() * BV.transpose();
  s.triplet.A = 0.5 * (s.triplet.A + s.triplet.A.transpose()).eval();
  s.triplet.b = s.triplet.A * s.phi_true + BV * (sigma * s.lambdas.cwiseSqrt().cwiseProduct(s.xi));
  s.triplet.y_norm_sq = 0.0;
  return s;
}

}  // namespace dartr::testing
