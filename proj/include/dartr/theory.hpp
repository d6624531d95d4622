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
#include <vector>

#include <Eigen/Core>

namespace dartr {
namespace theory {

enum class Decay { exponential, power, explicit_values };
enum class CoefficientRule { picard, bounded, explicit_values };
enum class Estimator { hg, l2 };

/// Diagonal model of the regularized estimators in the eigenbasis of L_Gbar:
/// eigenvalues lambda_i, true coefficients c_i and noise level sigma.
struct SpectralModel {
  Decay decay = Decay::exponential;
  double theta = 1.0;
  Eigen::VectorXd eigenvalues;  // explicit_values only, positive nonincreasing

  CoefficientRule rule = CoefficientRule::picard;
  double m0 = 1.0;               // bounded: c_i^2 = m0 lambda_i
  Eigen::VectorXd coefficients;  // explicit_values only: c_i

  long long truncation = 0;      // N; explicit sequences use their length when 0
  double sigma = 0.0;
  /// Adds the integral of the summand over [N + 1/2, inf) for rule-based
  /// power spectra.
  bool tail_correction = false;

  static SpectralModel exponential(double theta, double sigma, long long truncation = 0);
  static SpectralModel power(double theta, double sigma, long long truncation = 0);
  static SpectralModel explicit_spectrum(Eigen::VectorXd eigenvalues, Eigen::VectorXd coefficients,
                                         double sigma);

  /// Throws ParameterError when the invariants fail.
  void validate() const;
  long long size() const;
  double lambda_at(long long i) const;      // 1-based
  double coeff_sq_at(long long i) const;    // c_i^2, 1-based
};

/// N with lambda_N < 1e-3 sigma^4 for exponential decay; 10^6 for power decay.
long long default_truncation(Decay decay, double theta, double sigma);

struct Mse {
  double e_hg = 0.0;
  double e_l2 = 0.0;
};

/// e_l2 = sum (lambda_i + lambda)^-2 (sigma^2 lambda_i + lambda^2 c_i^2)
/// e_hg = sum (lambda_i^2 + lambda)^-2 (sigma^2 lambda_i^3 + lambda^2 c_i^2)
Mse mse_exact(const SpectralModel& model, double lambda);

/// The series of the MSE decomposition e_hg = sigma^2 A + lambda^2 B and
/// e_l2 = sigma^2 A~ + lambda^2 B~, with derivatives A', A~' and
/// B1 = B + (lambda / 2) B', B~1 = B~ + (lambda / 2) B~'.
struct SeriesPack {
  double a = 0.0, b = 0.0, a_prime = 0.0, b1 = 0.0;
  double a_tilde = 0.0, b_tilde = 0.0, a_tilde_prime = 0.0, b_tilde1 = 0.0;
};
SeriesPack series_pack(const SpectralModel& model, double lambda);

/// Leading small-lambda forms of A, B_c = sum (lambda_i^2+lambda)^-2 lambda_i,
/// A~, A~' and B~_c = sum (lambda_i+lambda)^-3 lambda_i^2.
struct SeriesApprox {
  double a = 0.0, b_c = 0.0, a_tilde = 0.0, a_tilde_prime = 0.0, b_tilde_c = 0.0;
};
/// lambda_i = exp(-theta i). Requires theta > 0 and 0 < lambda < 1.
SeriesApprox closed_form_exponential(double theta, double lambda);
/// lambda_i = i^-theta. Requires theta > 1 and 0 < lambda < 1.
SeriesApprox closed_form_power(double theta, double lambda);

/// C_theta(s, k, alpha) = Gamma(g) Gamma(k - g), g = (alpha - 1/theta) / (1 + s).
double c_theta(double theta, int s, int k, int alpha);

/// Minimizer of mse_exact by golden-section search on log lambda, polished
/// with one step of lambda = -sigma^2 A'(lambda) / (2 B1(lambda)) (or the
/// tilde analogue) when that lowers the error. Returns 0 for sigma = 0.
double optimal_lambda(const SpectralModel& model, Estimator kind);

struct OptimalPoint {
  double lambda = 0.0;
  double error = 0.0;
};
OptimalPoint minimize_mse(const SpectralModel& model, Estimator kind);

/// Rate constants in the form stated for Picard coefficients c_i^2 = lambda_i:
///   exponential  min e_hg ~ C_hg sigma, min e_l2 ~ C_l2 sigma,
///                lambda_opt = sigma^2, lambda~_opt = C_lambda sigma (C_lambda = 1)
///   power        C_hg = Gamma(1/2 - 1/(2 theta)) Gamma(1/2 + 1/(2 theta)) / (2 theta),
///                C_l2 = 2 C_hg, C_lambda = sqrt((theta + 1) / (theta - 1))
struct SharpConstants {
  double c_hg = 0.0;
  double c_l2 = 0.0;
  double c_lambda = 0.0;
};
SharpConstants sharp_constants(double theta, Decay decay);

/// Leading terms min e ~ coefficient * sigma^exponent and
/// lambda_opt ~ coefficient * sigma^exponent obtained by minimizing the
/// closed-form series for Picard coefficients.
struct PowerLaw {
  double coefficient = 0.0;
  double exponent = 0.0;
};
struct LeadingAsymptotics {
  PowerLaw error_hg, error_l2, lambda_hg, lambda_l2;
};
LeadingAsymptotics leading_asymptotics(double theta, Decay decay);

/// Samples xi ~ N(0, I) and evaluates
///   ||phi_hg - phi||^2  = sum (lambda_i^2 + lambda)^-2 (sigma lambda_i^{3/2} xi_i - lambda c_i)^2
///   ||phi_l2 - phi||^2  = sum (lambda_i + lambda)^-2 (sigma lambda_i^{1/2} xi_i - lambda c_i)^2
/// The draws are split into 16 blocks with derived seeds, so the result does
/// not depend on the thread count. Requires n_draws >= 100.
struct MonteCarloMse {
  double mean_hg = 0.0, mean_l2 = 0.0;
  double stderr_hg = 0.0, stderr_l2 = 0.0;
};
MonteCarloMse monte_carlo_mse(const SpectralModel& model, double lambda, long long n_draws, std::uint64_t seed);

/// Per-term squared errors of both estimators for one noise vector xi.
struct BiasTerms {
  Eigen::VectorXd hg;
  Eigen::VectorXd l2;
};
BiasTerms bias_terms(const SpectralModel& model, double lambda, const Eigen::VectorXd& xi);

}  // namespace theory
}  // namespace dartr
