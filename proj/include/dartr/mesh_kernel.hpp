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

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

namespace dartr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct GeneralizedSpectrum;

/// Ascending grid with a positive quadrature weight per point.
class Mesh {
 public:
  /// Throws ParameterError unless points are strictly increasing, weights
  /// strictly positive and there are at least two points.
  Mesh(Vector points, Vector weights);

  /// Right-endpoint grid x_k = lo + k (hi - lo) / count, k = 1..count, with
  /// uniform weights (hi - lo) / count.
  static Mesh uniform(double lo, double hi, Eigen::Index count);

  /// Weights are backward differences; the first point reuses the second
  /// spacing.
  static Mesh from_points(Vector points);

  const Vector& points() const { return points_; }
  const Vector& weights() const { return weights_; }
  Eigen::Index size() const { return points_.size(); }

 private:
  Vector points_;
  Vector weights_;
};

enum class KernelKind { exp, poly, tabulated };

/// Integral kernel K(t, s): one of the two built-ins, or a table aligned to
/// the (observation, source) meshes. `scale` multiplies every value.
struct KernelSpec {
  KernelKind kind = KernelKind::exp;
  Matrix table;  // m x n, only for tabulated
  double scale = 1.0;

  static KernelSpec exponential() { return {KernelKind::exp, {}, 1.0}; }
  static KernelSpec polynomial() { return {KernelKind::poly, {}, 1.0}; }
  static KernelSpec tabulated(Matrix values) { return {KernelKind::tabulated, std::move(values), 1.0}; }
  KernelSpec scaled(double factor) const;
};

/// K_exp(t, s) = s^-2 exp(-s t).
double kernel_exp(double t, double s);
/// K_poly(t, s) = s^-1 |sin(s t + 1)|.
double kernel_poly(double t, double s);

/// Evaluates K(t_i, s_k) on the grid, m x n. Throws EvaluationError naming
/// (i, k) on the first non-finite value.
Matrix tabulate_kernel(const Mesh& source, const Mesh& obs, const KernelSpec& kernel);

/// L_ik = K(t_i, s_k) * delta_k.
Matrix build_forward(const Mesh& source, const Mesh& obs, const KernelSpec& kernel);

struct DiscretizedProblem {
  Mesh source;
  Mesh obs;
  KernelSpec kernel;
  Matrix kernel_values;  // K(t_i, s_k), m x n
  Matrix forward;        // L, m x n
  std::optional<Vector> observations;
  double noise_sigma = 0.0;

  Eigen::Index n() const { return source.size(); }
  Eigen::Index m() const { return obs.size(); }
};

DiscretizedProblem make_problem(Mesh source, Mesh obs, KernelSpec kernel);

/// Uniform source mesh on (a, b] with n points and observation mesh on
/// (c, d] with spacing dt (m = round((d - c) / dt) points).
DiscretizedProblem make_uniform_problem(const KernelSpec& kernel, double a, double b, double c,
                                        double d, Eigen::Index n, double dt);

struct NoisyData {
  Vector y;
  double sigma = 0.0;
};

/// sigma = ||L phi_true||_2 * nsr; y = L phi_true + w with w_i ~ N(0, sigma^2 mu_i).
NoisyData generate_data(const DiscretizedProblem& problem, const Vector& phi_true, double nsr,
                        std::uint64_t seed);

/// Returns a copy of `problem` carrying the observations and sigma.
DiscretizedProblem with_data(DiscretizedProblem problem, const NoisyData& data);

enum class PhiTrueKind { eig2, square };

/// eig2: eigenvector of the second-largest positive eigenvalue (needs rank >= 2).
/// square: (s_k^2)_k.
Vector phi_true_catalog(PhiTrueKind kind, const Mesh& source,
                        const GeneralizedSpectrum* spectrum = nullptr);

/// Tabulated kernel CSV: header "t\s,<s values>", one row "t,<K values>" per
/// observation point.
struct KernelTable {
  Mesh source;
  Mesh obs;
  Matrix values;
};
KernelTable read_kernel_csv(const std::string& path);
void write_kernel_csv(const std::string& path, const Mesh& source, const Mesh& obs,
                      const Matrix& values);

}  // namespace dartr
