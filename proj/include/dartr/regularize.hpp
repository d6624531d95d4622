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
#include <string_view>

#include "dartr/spectral.hpp"
#include "dartr/triplet.hpp"

namespace dartr {

/// Tikhonov penalty matrix C:
///   l2     C = I
///   L2rho  C = B
///   rkhs   C = (V^-1)^T Lambda^+ V^-1, the norm of the RKHS with kernel Gbar
enum class RegularizerKind { l2, L2rho, rkhs };

std::string_view to_string(RegularizerKind kind);
/// Accepts "l2", "L2", "L2rho" and "rkhs".
RegularizerKind parse_regularizer(std::string_view name);

struct RegularizedSolution {
  Vector phi;
  double lambda = 0.0;
  double loss_value = 0.0;
  double penalty_value = 0.0;  // phi^T C phi
  RegularizerKind kind = RegularizerKind::l2;
};

/// Minimizer of ||y - L phi||^2 + lambda phi^T C phi. The l2 and L2rho cases
/// use a Cholesky solve of (A + lambda C); rkhs goes through rkhs_solve.
RegularizedSolution solve_tikhonov(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum,
                                   RegularizerKind kind, double lambda);

/// The RKHS system in the coordinates phi = C_* phi~ with C_* = V_r Lambda_r^{1/2}:
/// C_*^T A C_* = Lambda_r^2 and b~ = C_*^T b.
struct TransformedSystem {
  Matrix c_star;    // n x r
  Vector a_tilde;   // diagonal of Lambda_r^2
  Vector b_tilde;   // C_*^T b
};

TransformedSystem transformed_system(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum);

/// Solves (Lambda_r^2 + lambda I) phi~ = b~ and returns phi = C_* phi~. The
/// penalty is ||phi~||^2 = sum lambda_i^-1 c_i^2. Throws
/// DegenerateProblemError when the spectrum has rank zero.
RegularizedSolution rkhs_solve(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum,
                               double lambda);
RegularizedSolution rkhs_solve(const RegressionTriplet& triplet, const TransformedSystem& system,
                               double lambda);

/// Minimal-norm least squares on the FSOI: sum_{i<r} lambda_i^-1 (psi_i^T b) psi_i.
Vector unregularized_pinv(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum);

/// RKHS penalty sum_{i<r} lambda_i^-1 <phi, psi_i>^2 of an arbitrary vector.
double rkhs_penalty(const Vector& phi, const GeneralizedSpectrum& spectrum, const Matrix& B);

}  // namespace dartr
