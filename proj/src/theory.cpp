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

#include "dartr/theory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dartr/errors.hpp"
#include "dartr/gamma.hpp"
#include "dartr/parallel.hpp"
#include "dartr/rng.hpp"

namespace dartr::theory {

namespace {

constexpr long long kPowerTruncation = 1'000'000;
constexpr int kMonteCarloBlocks = 16;

// Neumaier compensated sum.
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Every series evaluated in one pass.
struct Sums {
  double e_hg = 0.0, e_l2 = 0.0;
  SeriesPack pack;
};

enum Slot { kA, kB, kAp, kB1, kAt, kBt, kAtp, kBt1, kEhg, kEl2, kSlots };

void add_terms(std::array<double, kSlots>& out, double l, double c2, double lambda, double sigma) {
  const double d = l * l + lambda;
  const double d2 = d * d, d3 = d2 * d;
  const double l3 = l * l * l;
  const double s2 = sigma * sigma, lam2 = lambda * lambda;
  out[kA] = l3 / d2;
  out[kB] = c2 / d2;
  out[kAp] = -2.0 * l3 / d3;
  out[kB1] = l * l * c2 / d3;
  out[kEhg] = (s2 * l3 + lam2 * c2) / d2;
  const double t = l + lambda;
  const double t2 = t * t, t3 = t2 * t;
  out[kAt] = l / t2;
  out[kBt] = c2 / t2;
  out[kAtp] = -2.0 * l / t3;
  out[kBt1] = l * c2 / t3;
  out[kEl2] = (s2 * l + lam2 * c2) / t2;
}

class SeriesEvaluator {
 public:
  explicit SeriesEvaluator(const SpectralModel& model) : model_(model) {
    model.validate();
    const long long n = model.size();
    l_.resize(n);
    c2_.resize(n);
    for (long long i = 1; i <= n; ++i) {
      l_[i - 1] = model.lambda_at(i);
      c2_[i - 1] = model.coeff_sq_at(i);
    }
    use_tail_ = model.tail_correction && model.decay == Decay::power &&
                model.rule != CoefficientRule::explicit_values;
  }

  Sums evaluate(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be positive and finite");
    std::array<Accumulator, kSlots> acc;
    std::array<double, kSlots> terms;
    for (Eigen::Index i = 0; i < l_.size(); ++i) {
      add_terms(terms, l_[i], c2_[i], lambda, model_.sigma);
      for (int s = 0; s < kSlots; ++s) acc[s].add(terms[s]);
    }
    if (use_tail_) add_tail(acc, lambda);

    Sums out;
    out.pack = {acc[kA].value(),  acc[kB].value(),  acc[kAp].value(),  acc[kB1].value(),
                acc[kAt].value(), acc[kBt].value(), acc[kAtp].value(), acc[kBt1].value()};
    out.e_hg = acc[kEhg].value();
    out.e_l2 = acc[kEl2].value();
    return out;
  }

  double error(double lambda, Estimator kind) const {
    const Sums s = evaluate(lambda);
    return kind == Estimator::hg ? s.e_hg : s.e_l2;
  }

  double lambda_first() const { return l_[0]; }
  double lambda_last() const { return l_[l_.size() - 1]; }

 private:
  // Integral of each summand over x in [N + 1/2, inf), written in u = 1/x.
  void add_tail(std::array<Accumulator, kSlots>& acc, double lambda) const {
    const double start = static_cast<double>(model_.size()) + 0.5;
    const double theta = model_.theta;
    const double factor = model_.rule == CoefficientRule::bounded ? model_.m0 : 1.0;
    boost::math::quadrature::tanh_sinh<double> integrator;
    std::array<double, kSlots> e_tail{};
    for (int s = 0; s < kSlots; ++s) {
      if (s == kEhg || s == kEl2) continue;
      auto f = [&](double u) {
        if (!(u > 0.0)) return 0.0;
        const double x = 1.0 / u;
        if (!std::isfinite(x)) return 0.0;
        const double l = std::pow(x, -theta);
        std::array<double, kSlots> terms;
        add_terms(terms, l, factor * l, lambda, 0.0);
        return terms[s] * x * x;
      };
      e_tail[s] = integrator.integrate(f, 0.0, 1.0 / start);
      acc[s].add(e_tail[s]);
    }
    const double s2 = model_.sigma * model_.sigma, lam2 = lambda * lambda;
    acc[kEhg].add(s2 * e_tail[kA] + lam2 * e_tail[kB]);
    acc[kEl2].add(s2 * e_tail[kAt] + lam2 * e_tail[kBt]);
  }

  const SpectralModel& model_;
  Eigen::VectorXd l_;
  Eigen::VectorXd c2_;
  bool use_tail_ = false;
};

double golden_section(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

void require_lambda_unit(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("closed forms require 0 < lambda < 1");
}

}  // namespace

SpectralModel SpectralModel::exponential(double theta, double sigma, long long truncation) {
  SpectralModel m;
  m.decay = Decay::exponential;
  m.theta = theta;
  m.sigma = sigma;
  m.truncation = truncation > 0 ? truncation : default_truncation(Decay::exponential, theta, sigma);
  return m;
}

SpectralModel SpectralModel::power(double theta, double sigma, long long truncation) {
  SpectralModel m;
  m.decay = Decay::power;
  m.theta = theta;
  m.sigma = sigma;
  m.truncation = truncation > 0 ? truncation : default_truncation(Decay::power, theta, sigma);
  m.tail_correction = true;
  return m;
}

SpectralModel SpectralModel::explicit_spectrum(Eigen::VectorXd eigenvalues, Eigen::VectorXd coefficients,
                                               double sigma) {
  SpectralModel m;
  m.decay = Decay::explicit_values;
  m.rule = CoefficientRule::explicit_values;
  m.truncation = eigenvalues.size();
  m.eigenvalues = std::move(eigenvalues);
  m.coefficients = std::move(coefficients);
  m.sigma = sigma;
  return m;
}

void SpectralModel::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be finite and nonnegative");
  if (decay != Decay::explicit_values && !(theta > 0.0)) throw ParameterError("theta must be positive");
  if (size() < 1) throw ParameterError("truncation N must be at least 1");
  if (decay == Decay::explicit_values) {
    if (size() > eigenvalues.size()) throw ParameterError("truncation exceeds the explicit eigenvalue list");
    for (Eigen::Index i = 0; i < size(); ++i) {
      if (!(eigenvalues[i] > 0.0)) throw ParameterError("eigenvalues must be positive");
      if (i > 0 && eigenvalues[i] > eigenvalues[i - 1]) throw ParameterError("eigenvalues must be nonincreasing");
    }
  }
  if (rule == CoefficientRule::explicit_values && size() > coefficients.size()) {
    throw ParameterError("truncation exceeds the explicit coefficient list");
  }
  if (rule == CoefficientRule::bounded && !(m0 >= 0.0)) throw ParameterError("M0 must be nonnegative");
}

long long SpectralModel::size() const {
  if (truncation > 0) return truncation;
  return decay == Decay::explicit_values ? eigenvalues.size() : 0;
}

double SpectralModel::lambda_at(long long i) const {
  switch (decay) {
    case Decay::exponential:
      return std::exp(-theta * static_cast<double>(i));
    case Decay::power:
      return std::pow(static_cast<double>(i), -theta);
    case Decay::explicit_values:
      return eigenvalues[i - 1];
  }
  return 0.0;
}

double SpectralModel::coeff_sq_at(long long i) const {
  switch (rule) {
    case CoefficientRule::picard:
      return lambda_at(i);
    case CoefficientRule::bounded:
      return m0 * lambda_at(i);
    case CoefficientRule::explicit_values:
      return coefficients[i - 1] * coefficients[i - 1];
  }
  return 0.0;
}

long long default_truncation(Decay decay, double theta, double sigma) {
  if (decay == Decay::power) return kPowerTruncation;
  if (!(theta > 0.0)) throw ParameterError("theta must be positive");
  const double s = sigma > 0.0 ? std::min(sigma, 1.0) : 1e-8;
  return std::max(1LL, static_cast<long long>(std::ceil((std::log(1e3) - 4.0 * std::log(s)) / theta)));
}

Mse mse_exact(const SpectralModel& model, double lambda) {
  const Sums s = SeriesEvaluator(model).evaluate(lambda);
  return {s.e_hg, s.e_l2};
}

SeriesPack series_pack(const SpectralModel& model, double lambda) {
  return SeriesEvaluator(model).evaluate(lambda).pack;
}

SeriesApprox closed_form_exponential(double theta, double lambda) {
  if (!(theta > 0.0)) throw DomainError("closed_form_exponential: theta must be positive");
  require_lambda_unit(lambda);
  const double r = std::sqrt(lambda);
  const double at = std::atan(1.0 / r);
  SeriesApprox out;
  out.a = (at - r / (1.0 + lambda)) / (2.0 * theta * r);
  out.b_c = (at + r / (1.0 + lambda)) / (2.0 * theta * lambda * r);
  out.a_tilde = 1.0 / (theta * lambda * (1.0 + lambda));
  out.a_tilde_prime = -(1.0 + 2.0 * lambda) / (theta * lambda * lambda * (1.0 + lambda) * (1.0 + lambda));
  out.b_tilde_c = 1.0 / (2.0 * theta * lambda * (1.0 + lambda) * (1.0 + lambda));
  return out;
}

double c_theta(double theta, int s, int k, int alpha) {
  const double g = (alpha - 1.0 / theta) / (1.0 + s);
  if (!(g > 0.0) || !(k - g > 0.0)) throw DomainError("C_theta: Gamma argument is not positive");
  return gamma_fn(g) * gamma_fn(k - g);
}

SeriesApprox closed_form_power(double theta, double lambda) {
  if (!(theta > 1.0)) throw DomainError("closed_form_power: theta must exceed 1");
  require_lambda_unit(lambda);
  auto gamma_of = [&](int s, int alpha) { return (alpha - 1.0 / theta) / (1.0 + s); };
  SeriesApprox out;
  out.a = std::pow(lambda, gamma_of(1, 3) - 2.0) * c_theta(theta, 1, 2, 3) / (2.0 * theta);
  out.b_c = std::pow(lambda, gamma_of(1, 1) - 2.0) * c_theta(theta, 1, 2, 1) / (2.0 * theta);
  out.a_tilde = std::pow(lambda, gamma_of(0, 1) - 2.0) * c_theta(theta, 0, 2, 1) / theta;
  out.a_tilde_prime = -std::pow(lambda, gamma_of(0, 1) - 3.0) * c_theta(theta, 0, 3, 1) / theta;
  out.b_tilde_c = std::pow(lambda, gamma_of(0, 2) - 3.0) * c_theta(theta, 0, 3, 2) / (2.0 * theta);
  return out;
}

OptimalPoint minimize_mse(const SpectralModel& model, Estimator kind) {
  const SeriesEvaluator series(model);
  if (model.sigma == 0.0) return {0.0, 0.0};
  const double first = series.lambda_first(), last = series.lambda_last();
  const double lo = std::log(kind == Estimator::hg ? last * last * 1e-3 : last * 1e-3);
  const double hi = std::log(first * 1e3);
  auto f = [&](double u) { return series.error(std::exp(u), kind); };

  // A coarse scan guards the golden-section search against flat stretches.
  constexpr int kScan = 64;
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= kScan; ++j) {
    const double v = f(lo + (hi - lo) * j / kScan);
    if (v < best_value) {
      best_value = v;
      best = j;
    }
  }
  const double step = (hi - lo) / kScan;
  const double a = lo + std::max(0, best - 1) * step;
  const double b = lo + std::min(kScan, best + 1) * step;
  OptimalPoint point;
  point.lambda = std::exp(golden_section(f, a, b, 1e-7));
  point.error = series.error(point.lambda, kind);

  const Sums s = series.evaluate(point.lambda);
  const double s2 = model.sigma * model.sigma;
  const double polished = kind == Estimator::hg ? -s2 * s.pack.a_prime / (2.0 * s.pack.b1)
                                                : -s2 * s.pack.a_tilde_prime / (2.0 * s.pack.b_tilde1);
  if (polished > 0.0 && std::isfinite(polished)) {
    const double e = series.error(polished, kind);
    if (e <= point.error) point = {polished, e};
  }
  return point;
}

double optimal_lambda(const SpectralModel& model, Estimator kind) { return minimize_mse(model, kind).lambda; }

SharpConstants sharp_constants(double theta, Decay decay) {
  SharpConstants out;
  if (decay == Decay::exponential) {
    if (!(theta > 0.0)) throw DomainError("sharp_constants: theta must be positive");
    out.c_hg = std::numbers::pi / (4.0 * theta);
    out.c_l2 = 2.0 / theta;
    out.c_lambda = 1.0;
    return out;
  }
  if (decay != Decay::power) throw ParameterError("sharp_constants: decay must be exponential or power");
  if (!(theta > 1.0)) throw DomainError("sharp_constants: power decay needs theta > 1");
  out.c_hg = gamma_fn(0.5 - 0.5 / theta) * gamma_fn(0.5 + 0.5 / theta) / (2.0 * theta);
  out.c_l2 = 2.0 * out.c_hg;
  out.c_lambda = std::sqrt((theta + 1.0) / (theta - 1.0));
  return out;
}

LeadingAsymptotics leading_asymptotics(double theta, Decay decay) {
  LeadingAsymptotics out;
  if (decay == Decay::exponential) {
    if (!(theta > 0.0)) throw DomainError("leading_asymptotics: theta must be positive");
    // sigma^2 A + lambda^2 B_c ~ (pi / 4 theta)(sigma^2 lambda^-1/2 + lambda^1/2).
    out.error_hg = {std::numbers::pi / (2.0 * theta), 1.0};
    out.lambda_hg = {1.0, 2.0};
    // (sigma^2 + lambda^2) / (theta lambda).
    out.error_l2 = {2.0 / theta, 1.0};
    out.lambda_l2 = {1.0, 1.0};
    return out;
  }
  if (decay != Decay::power) throw ParameterError("leading_asymptotics: decay must be exponential or power");
  if (!(theta > 1.0)) throw DomainError("leading_asymptotics: power decay needs theta > 1");
  const double rate = 1.0 - 1.0 / theta;
  out.error_hg = {gamma_fn(0.5 - 0.5 / theta) * gamma_fn(0.5 + 0.5 / theta) / (2.0 * theta), rate};
  out.lambda_hg = {1.0, 2.0};
  const double c_lambda = std::sqrt((theta + 1.0) / (theta - 1.0));
  const double k = gamma_fn(1.0 - 1.0 / theta) * gamma_fn(1.0 + 1.0 / theta) / theta;
  out.error_l2 = {k * (1.0 + c_lambda * c_lambda) * std::pow(c_lambda, -1.0 - 1.0 / theta), rate};
  out.lambda_l2 = {c_lambda, 1.0};
  return out;
}

BiasTerms bias_terms(const SpectralModel& model, double lambda, const Eigen::VectorXd& xi) {
  model.validate();
  if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
  const long long n = model.size();
  if (xi.size() != n) throw ParameterError("bias_terms: xi must have N entries");
  BiasTerms out{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (long long i = 1; i <= n; ++i) {
    const double l = model.lambda_at(i);
    const double c = std::sqrt(model.coeff_sq_at(i));
    const double c_signed = model.rule == CoefficientRule::explicit_values ? model.coefficients[i - 1] : c;
    const double hg = (model.sigma * std::pow(l, 1.5) * xi[i - 1] - lambda * c_signed) / (l * l + lambda);
    const double l2 = (model.sigma * std::sqrt(l) * xi[i - 1] - lambda * c_signed) / (l + lambda);
    out.hg[i - 1] = hg * hg;
    out.l2[i - 1] = l2 * l2;
  }
  return out;
}

MonteCarloMse monte_carlo_mse(const SpectralModel& model, double lambda, long long n_draws, std::uint64_t seed) {
  model.validate();
  if (n_draws < 100) throw ParameterError("monte_carlo_mse: n_draws must be at least 100");
  if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
  const long long n = model.size();
  Eigen::VectorXd noise_hg(n), noise_l2(n), bias_hg(n), bias_l2(n);
  for (long long i = 1; i <= n; ++i) {
    const double l = model.lambda_at(i);
    const double c = model.rule == CoefficientRule::explicit_values ? model.coefficients[i - 1]
                                                                     : std::sqrt(model.coeff_sq_at(i));
    noise_hg[i - 1] = model.sigma * std::pow(l, 1.5) / (l * l + lambda);
    bias_hg[i - 1] = lambda * c / (l * l + lambda);
    noise_l2[i - 1] = model.sigma * std::sqrt(l) / (l + lambda);
    bias_l2[i - 1] = lambda * c / (l + lambda);
  }

  struct Moments {
    long long count = 0;
    double mean_hg = 0.0, m2_hg = 0.0, mean_l2 = 0.0, m2_l2 = 0.0;
  };
  std::vector<Moments> blocks(kMonteCarloBlocks);
  parallel_for(kMonteCarloBlocks, [&](std::size_t b) {
    const long long draws = n_draws / kMonteCarloBlocks + (static_cast<long long>(b) < n_draws % kMonteCarloBlocks);
    NormalGenerator normal(derive_seed(seed, b));
    Moments m;
    for (long long d = 0; d < draws; ++d) {
      double e_hg = 0.0, e_l2 = 0.0;
      for (long long i = 0; i < n; ++i) {
        const double xi = normal();
        const double rh = noise_hg[i] * xi - bias_hg[i];
        const double rl = noise_l2[i] * xi - bias_l2[i];
        e_hg += rh * rh;
        e_l2 += rl * rl;
      }
      ++m.count;
      const double dh = e_hg - m.mean_hg;
      m.mean_hg += dh / static_cast<double>(m.count);
      m.m2_hg += dh * (e_hg - m.mean_hg);
      const double dl = e_l2 - m.mean_l2;
      m.mean_l2 += dl / static_cast<double>(m.count);
      m.m2_l2 += dl * (e_l2 - m.mean_l2);
    }
    blocks[b] = m;
  });

  Moments total;
  for (const Moments& m : blocks) {
    if (m.count == 0) continue;
    const double na = static_cast<double>(total.count), nb = static_cast<double>(m.count);
    const double nt = na + nb;
    const double dh = m.mean_hg - total.mean_hg, dl = m.mean_l2 - total.mean_l2;
    total.mean_hg += dh * nb / nt;
    total.m2_hg += m.m2_hg + dh * dh * na * nb / nt;
    total.mean_l2 += dl * nb / nt;
    total.m2_l2 += m.m2_l2 + dl * dl * na * nb / nt;
    total.count += m.count;
  }
  const double cnt = static_cast<double>(total.count);
  MonteCarloMse out;
  out.mean_hg = total.mean_hg;
  out.mean_l2 = total.mean_l2;
  out.stderr_hg = std::sqrt(total.m2_hg / (cnt - 1.0) / cnt);
  out.stderr_l2 = std::sqrt(total.m2_l2 / (cnt - 1.0) / cnt);
  return out;
}

}  // namespace dartr::theory
