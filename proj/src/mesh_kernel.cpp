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

#include "dartr/mesh_kernel.hpp"

#include <cmath>
#include <sstream>

#include "dartr/csv.hpp"
#include "dartr/errors.hpp"
#include "dartr/rng.hpp"
#include "dartr/spectral.hpp"

namespace dartr {

Mesh::Mesh(Vector points, Vector weights) : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.size() < 2) throw ParameterError("mesh needs at least two points");
  if (weights_.size() != points_.size()) throw ParameterError("mesh weights/points length mismatch");
  for (Eigen::Index k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k])) throw ParameterError("mesh point is not finite");
    if (!(weights_[k] > 0.0) || !std::isfinite(weights_[k])) {
      throw ParameterError("mesh weight " + std::to_string(k) + " is not strictly positive");
    }
    if (k > 0 && !(points_[k] > points_[k - 1])) {
      throw ParameterError("mesh points must be strictly increasing (index " + std::to_string(k) + ")");
    }
  }
}

Mesh Mesh::uniform(double lo, double hi, Eigen::Index count) {
  if (count < 2) throw ParameterError("uniform mesh needs at least two points");
  if (!(hi > lo)) throw ParameterError("uniform mesh needs hi > lo");
  const double h = (hi - lo) / static_cast<double>(count);
  Vector points(count);
  for (Eigen::Index k = 0; k < count; ++k) points[k] = lo + static_cast<double>(k + 1) * h;
  return Mesh(std::move(points), Vector::Constant(count, h));
}

Mesh Mesh::from_points(Vector points) {
  if (points.size() < 2) throw ParameterError("mesh needs at least two points");
  Vector weights(points.size());
  for (Eigen::Index k = 1; k < points.size(); ++k) weights[k] = points[k] - points[k - 1];
  weights[0] = weights[1];
  return Mesh(std::move(points), std::move(weights));
}

KernelSpec KernelSpec::scaled(double factor) const {
  KernelSpec out = *this;
  out.scale *= factor;
  return out;
}

double kernel_exp(double t, double s) { return std::exp(-s * t) / (s * s); }

double kernel_poly(double t, double s) { return std::abs(std::sin(s * t + 1.0)) / s; }

Matrix tabulate_kernel(const Mesh& source, const Mesh& obs, const KernelSpec& kernel) {
  const Eigen::Index m = obs.size();
  const Eigen::Index n = source.size();
  Matrix values(m, n);
  switch (kernel.kind) {
    case KernelKind::tabulated:
      if (kernel.table.rows() != m || kernel.table.cols() != n) {
        std::ostringstream msg;
        msg << "tabulated kernel is " << kernel.table.rows() << "x" << kernel.table.cols()
            << ", meshes need " << m << "x" << n;
        throw ParameterError(msg.str());
      }
      values = kernel.table;
      break;
    case KernelKind::exp:
    case KernelKind::poly: {
      const auto eval = kernel.kind == KernelKind::exp ? kernel_exp : kernel_poly;
      for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index i = 0; i < m; ++i) values(i, k) = eval(obs.points()[i], source.points()[k]);
      }
      break;
    }
  }
  values *= kernel.scale;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!std::isfinite(values(i, k))) {
        throw EvaluationError("kernel is not finite at (i, k) = (" + std::to_string(i) + ", " +
                              std::to_string(k) + ")");
      }
    }
  }
  return values;
}

Matrix build_forward(const Mesh& source, const Mesh& obs, const KernelSpec& kernel) {
  Matrix values = tabulate_kernel(source, obs, kernel);
  return values * source.weights().asDiagonal();
}

DiscretizedProblem make_problem(Mesh source, Mesh obs, KernelSpec kernel) {
  Matrix values = tabulate_kernel(source, obs, kernel);
  Matrix forward = values * source.weights().asDiagonal();
  return DiscretizedProblem{std::move(source), std::move(obs), std::move(kernel), std::move(values),
                            std::move(forward), std::nullopt, 0.0};
}

DiscretizedProblem make_uniform_problem(const KernelSpec& kernel, double a, double b, double c,
                                        double d, Eigen::Index n, double dt) {
  if (!(dt > 0.0)) throw ParameterError("dt must be positive");
  const auto m = static_cast<Eigen::Index>(std::llround((d - c) / dt));
  Mesh obs = Mesh::uniform(c, d, m);
  return make_problem(Mesh::uniform(a, b, n), std::move(obs), kernel);
}

NoisyData generate_data(const DiscretizedProblem& problem, const Vector& phi_true, double nsr,
                        std::uint64_t seed) {
  if (phi_true.size() != problem.n()) throw ParameterError("phi_true length must equal n");
  if (!(nsr >= 0.0) || !std::isfinite(nsr)) throw ParameterError("nsr must be nonnegative");
  const Vector signal = problem.forward * phi_true;
  NoisyData data;
  data.sigma = signal.norm() * nsr;
  data.y = signal;
  if (data.sigma > 0.0) {
    NormalGenerator normal(seed);
    for (Eigen::Index i = 0; i < data.y.size(); ++i) {
      data.y[i] += data.sigma * std::sqrt(problem.obs.weights()[i]) * normal();
    }
  }
  return data;
}

DiscretizedProblem with_data(DiscretizedProblem problem, const NoisyData& data) {
  if (data.y.size() != problem.m()) throw ParameterError("observation length must equal m");
  problem.observations = data.y;
  problem.noise_sigma = data.sigma;
  return problem;
}

Vector phi_true_catalog(PhiTrueKind kind, const Mesh& source, const GeneralizedSpectrum* spectrum) {
  switch (kind) {
    case PhiTrueKind::square:
      return source.points().array().square().matrix();
    case PhiTrueKind::eig2:
      if (spectrum == nullptr || spectrum->rank < 2) {
        throw InsufficientRankError("eig2 needs a spectrum of rank >= 2");
      }
      if (spectrum->eigenvectors.rows() != source.size()) {
        throw ParameterError("spectrum dimension does not match the source mesh");
      }
      return spectrum->eigenvectors.col(1);
  }
  throw ParameterError("unknown phi_true kind");
}

KernelTable read_kernel_csv(const std::string& path) {
  const CsvData csv = read_csv(path);
  if (csv.header.size() < 3 || csv.header[0] != "t\\s") {
    throw ParameterError(path + ": header must start with 't\\s' and list at least two s values");
  }
  const auto n = static_cast<Eigen::Index>(csv.header.size() - 1);
  const auto m = static_cast<Eigen::Index>(csv.rows.size());
  Vector s(n), t(m);
  Matrix values(m, n);
  for (Eigen::Index k = 0; k < n; ++k) s[k] = parse_double(csv.header[k + 1]);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& row = csv.rows[i];
    if (static_cast<Eigen::Index>(row.size()) != n + 1) {
      throw ParameterError(path + ": row " + std::to_string(i + 1) + " has wrong field count");
    }
    t[i] = parse_double(row[0]);
    for (Eigen::Index k = 0; k < n; ++k) values(i, k) = parse_double(row[k + 1]);
  }
  return KernelTable{Mesh::from_points(std::move(s)), Mesh::from_points(std::move(t)), std::move(values)};
}

void write_kernel_csv(const std::string& path, const Mesh& source, const Mesh& obs,
                      const Matrix& values) {
  std::vector<std::string> header{"t\\s"};
  for (Eigen::Index k = 0; k < source.size(); ++k) header.push_back(format_double(source.points()[k]));
  CsvWriter writer(header);
  for (Eigen::Index i = 0; i < obs.size(); ++i) {
    std::vector<CsvWriter::Field> row{obs.points()[i]};
    for (Eigen::Index k = 0; k < source.size(); ++k) row.emplace_back(values(i, k));
    writer.add_row(row);
  }
  writer.save(path);
}

}  // namespace dartr
