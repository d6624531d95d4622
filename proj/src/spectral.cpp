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

#include "dartr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "dartr/csv.hpp"
#include "dartr/errors.hpp"

namespace dartr {

namespace {

void normalize_sign(Eigen::Ref<Vector> v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v[arg] < 0.0) v = -v;
}

}  // namespace

GeneralizedSpectrum generalized_eigen(const Matrix& A, const Matrix& B, double rank_threshold_override) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n || B.cols() != n) {
    throw ParameterError("generalized_eigen: A and B must be square of equal size");
  }
  const Vector diag = B.diagonal();
  if ((B - Matrix(diag.asDiagonal())).cwiseAbs().maxCoeff() != 0.0) {
    throw ParameterError("generalized_eigen: B must be diagonal");
  }
  if (diag.minCoeff() < 0.0) throw ParameterError("generalized_eigen: B must be positive semi-definite");
  const double bmax = diag.maxCoeff();
  if (!(bmax > 0.0)) throw DegenerateProblemError("generalized_eigen: B is zero");

  std::vector<Eigen::Index> on, off;
  for (Eigen::Index k = 0; k < n; ++k) (diag[k] > 1e-14 * bmax ? on : off).push_back(k);
  const auto ns = static_cast<Eigen::Index>(on.size());

  Vector inv_sqrt(ns);
  for (Eigen::Index j = 0; j < ns; ++j) inv_sqrt[j] = 1.0 / std::sqrt(diag[on[j]]);
  Matrix whitened(ns, ns);
  for (Eigen::Index j = 0; j < ns; ++j) {
    for (Eigen::Index k = 0; k < ns; ++k) whitened(j, k) = inv_sqrt[j] * A(on[j], on[k]) * inv_sqrt[k];
  }
  whitened = 0.5 * (whitened + whitened.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(whitened);
  if (solver.info() != Eigen::Success) throw SolverError("symmetric eigensolver did not converge");

  GeneralizedSpectrum out;
  out.support_size = ns;
  out.eigenvalues = Vector::Zero(n);
  out.eigenvectors = Matrix::Zero(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index c = 0; c < ns; ++c) {
    const Eigen::Index src = ns - 1 - c;
    out.eigenvalues[c] = std::max(solver.eigenvalues()[src], 0.0);
    for (Eigen::Index j = 0; j < ns; ++j) out.eigenvectors(on[j], c) = inv_sqrt[j] * solver.eigenvectors()(j, src);
    normalize_sign(out.eigenvectors.col(c));
  }
  for (std::size_t j = 0; j < off.size(); ++j) out.eigenvectors(off[j], ns + static_cast<Eigen::Index>(j)) = 1.0;

  const double machine = static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  out.rank_threshold = std::max(out.eigenvalues[0] * machine, rank_threshold_override);
  out.rank = (out.eigenvalues.array() > out.rank_threshold).count();
  return out;
}

Vector symmetric_eigenvalues(const Matrix& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(A, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SolverError("symmetric eigensolver did not converge");
  return solver.eigenvalues().reverse();
}

Matrix g_matrix(const DiscretizedProblem& problem) {
  const Matrix weighted = problem.obs.weights().cwiseSqrt().asDiagonal() * problem.kernel_values;
  Matrix g = weighted.transpose() * weighted;
  return 0.5 * (g + g.transpose());
}

GbarMatrix gbar_matrix(const DiscretizedProblem& problem, const ExplorationMeasure& measure) {
  GbarMatrix out;
  out.indices = measure.support_indices();
  if (out.indices.empty()) throw DegenerateProblemError("gbar_matrix: empty measure support");
  const Matrix g = g_matrix(problem);
  const auto ns = static_cast<Eigen::Index>(out.indices.size());
  out.values.resize(ns, ns);
  for (Eigen::Index j = 0; j < ns; ++j) {
    const Eigen::Index sj = out.indices[j];
    for (Eigen::Index k = 0; k < ns; ++k) {
      const Eigen::Index sk = out.indices[k];
      out.values(j, k) = g(sj, sk) / (measure.density[sj] * measure.density[sk]);
    }
  }
  return out;
}

TraceIdentity trace_identity(const GeneralizedSpectrum& spectrum, const GbarMatrix& gbar,
                             const ExplorationMeasure& measure) {
  TraceIdentity out;
  out.lhs = spectrum.eigenvalues.sum();
  for (std::size_t j = 0; j < gbar.indices.size(); ++j) {
    const auto idx = static_cast<Eigen::Index>(j);
    out.rhs += gbar.values(idx, idx) * measure.weights[gbar.indices[j]];
  }
  const double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
  out.relative_error = scale > 0.0 ? std::abs(out.lhs - out.rhs) / scale : 0.0;
  return out;
}

Vector fsoi_coefficients(const Vector& phi, const GeneralizedSpectrum& spectrum, const Matrix& B) {
  if (phi.size() != B.rows() || spectrum.eigenvectors.rows() != phi.size()) {
    throw ParameterError("fsoi: dimension mismatch");
  }
  return spectrum.positive_vectors().transpose() * (B * phi);
}

Vector fsoi_project(const Vector& phi, const GeneralizedSpectrum& spectrum, const Matrix& B) {
  return spectrum.positive_vectors() * fsoi_coefficients(phi, spectrum, B);
}

double projected_error(const Vector& phi_hat, const Vector& phi_true, const GeneralizedSpectrum& spectrum,
                       const Matrix& B) {
  if (phi_hat.size() != phi_true.size()) throw ParameterError("projected_error: dimension mismatch");
  // The columns are B-orthonormal, so the norm is the coefficient norm.
  return fsoi_coefficients(phi_hat - phi_true, spectrum, B).squaredNorm();
}

void write_spectrum_csv(const std::string& path, const Vector& eigenvalues) {
  CsvWriter writer({"i", "lambda_i"});
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    writer.add_row({static_cast<long long>(i + 1), eigenvalues[i]});
  }
  writer.save(path);
}

void write_eigenvectors_csv(const std::string& path, const Matrix& eigenvectors) {
  std::vector<std::string> header;
  for (Eigen::Index c = 0; c < eigenvectors.cols(); ++c) header.push_back("psi_" + std::to_string(c + 1));
  CsvWriter writer(header);
  for (Eigen::Index r = 0; r < eigenvectors.rows(); ++r) {
    std::vector<CsvWriter::Field> row;
    for (Eigen::Index c = 0; c < eigenvectors.cols(); ++c) row.emplace_back(eigenvectors(r, c));
    writer.add_row(row);
  }
  writer.save(path);
}

}  // namespace dartr
