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

#include "dartr/regularize.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "dartr/errors.hpp"

namespace dartr {

std::string_view to_string(RegularizerKind kind) {
  switch (kind) {
    case RegularizerKind::l2:
      return "l2";
    case RegularizerKind::L2rho:
      return "L2";
    case RegularizerKind::rkhs:
      return "rkhs";
  }
  return "?";
}

RegularizerKind parse_regularizer(std::string_view name) {
  if (name == "l2") return RegularizerKind::l2;
  if (name == "L2" || name == "L2rho") return RegularizerKind::L2rho;
  if (name == "rkhs") return RegularizerKind::rkhs;
  throw ParameterError("unknown regularizer '" + std::string(name) + "'");
}

namespace {

void require_positive_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be positive and finite");
}

// (A + lambda C) phi = b for symmetric positive definite A + lambda C.
Vector shifted_solve(const Matrix& A, const Matrix& C, double lambda, const Vector& b) {
  const Matrix shifted = A + lambda * C;
  Eigen::LLT<Matrix> llt(shifted);
  if (llt.info() == Eigen::Success) return llt.solve(b);
  // Rounding can break positivity when lambda is far below ||A||; the
  // pivoted LDL^T still factors the symmetric matrix.
  Eigen::LDLT<Matrix> ldlt(shifted);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().cwiseAbs().minCoeff() == 0.0) {
    throw SolverError("shifted normal matrix is singular");
  }
  return ldlt.solve(b);
}

}  // namespace

double rkhs_penalty(const Vector& phi, const GeneralizedSpectrum& spectrum, const Matrix& B) {
  const Vector c = fsoi_coefficients(phi, spectrum, B);
  return c.cwiseAbs2().cwiseQuotient(spectrum.positive_values()).sum();
}

TransformedSystem transformed_system(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum) {
  if (spectrum.rank == 0) throw DegenerateProblemError("rkhs: spectrum has no positive eigenvalue");
  if (spectrum.eigenvectors.rows() != triplet.n()) throw ParameterError("rkhs: spectrum dimension mismatch");
  TransformedSystem system;
  const Vector root = spectrum.positive_values().cwiseSqrt();
  system.c_star = spectrum.positive_vectors() * root.asDiagonal();
  system.a_tilde = spectrum.positive_values().cwiseAbs2();
  system.b_tilde = system.c_star.transpose() * triplet.b;
  return system;
}

RegularizedSolution rkhs_solve(const RegressionTriplet& triplet, const TransformedSystem& system,
                               double lambda) {
  require_positive_lambda(lambda);
  const Vector phi_tilde = system.b_tilde.cwiseQuotient((system.a_tilde.array() + lambda).matrix());
  RegularizedSolution out;
  out.kind = RegularizerKind::rkhs;
  out.lambda = lambda;
  out.phi = system.c_star * phi_tilde;
  out.loss_value = loss(triplet, out.phi);
  out.penalty_value = phi_tilde.squaredNorm();
  return out;
}

RegularizedSolution rkhs_solve(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum,
                               double lambda) {
  require_positive_lambda(lambda);
  return rkhs_solve(triplet, transformed_system(triplet, spectrum), lambda);
}

RegularizedSolution solve_tikhonov(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum,
                                   RegularizerKind kind, double lambda) {
  require_positive_lambda(lambda);
  if (kind == RegularizerKind::rkhs) return rkhs_solve(triplet, spectrum, lambda);

  RegularizedSolution out;
  out.kind = kind;
  out.lambda = lambda;
  if (kind == RegularizerKind::l2) {
    out.phi = shifted_solve(triplet.A, Matrix::Identity(triplet.n(), triplet.n()), lambda, triplet.b);
    out.penalty_value = out.phi.squaredNorm();
  } else {
    out.phi = shifted_solve(triplet.A, triplet.B, lambda, triplet.b);
    out.penalty_value = out.phi.dot(triplet.B * out.phi);
  }
  out.loss_value = loss(triplet, out.phi);
  return out;
}

Vector unregularized_pinv(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum) {
  if (spectrum.eigenvectors.rows() != triplet.n()) throw ParameterError("pinv: spectrum dimension mismatch");
  const auto V = spectrum.positive_vectors();
  const Vector projected = V.transpose() * triplet.b;
  return V * projected.cwiseQuotient(spectrum.positive_values());
}

}  // namespace dartr
