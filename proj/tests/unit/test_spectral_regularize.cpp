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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dartr/algorithm.hpp"
#include "dartr/errors.hpp"
#include "dartr/lcurve.hpp"
#include "dartr/regularize.hpp"
#include "dartr/spectral.hpp"
#include "exp_setup.hpp"
#include "support.hpp"

using namespace dartr;
using dartr::testing::exp_setup;

namespace {

RegressionTriplet make_triplet(const Matrix& A, const Matrix& B, const Vector& b) {
  RegressionTriplet t;
  t.A = A;
  t.B = B;
  t.b = b;
  t.y_norm_sq = 0.0;
  return t;
}

Matrix diag(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v.asDiagonal();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

DiscretizedProblem toy3() {
  Matrix table(2, 3);
  table << 1.0, 2.0, 0.5, 0.25, 1.5, 3.0;
  return make_problem(Mesh(Eigen::Vector3d(1.0, 2.0, 3.0), Eigen::Vector3d(0.5, 1.0, 1.5)),
                      Mesh(Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(2.0, 0.5)), KernelSpec::tabulated(table));
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("already diagonal pair") {
    const GeneralizedSpectrum s = generalized_eigen(diag({3.0, 1.0}), Matrix::Identity(2, 2));
    CHECK(s.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK((s.eigenvectors - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(s.rank == 2);
  }

  TEST_CASE("random SPD pairs satisfy the eigen equation and B-orthonormality") {
    testing::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix X = testing::normal_matrix(rng, 5, 5);
      const Matrix A = X * X.transpose() + 0.1 * Matrix::Identity(5, 5);
      const Matrix B = testing::normal_vector(rng, 5).cwiseAbs().asDiagonal();
      const GeneralizedSpectrum s = generalized_eigen(A, B);
      const Matrix& V = s.eigenvectors;
      CHECK((A * V - B * V * s.eigenvalues.asDiagonal()).norm() < 1e-10 * A.norm());
      CHECK((V.transpose() * B * V - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("non-diagonal B is rejected") {
    CHECK_THROWS_AS(generalized_eigen(Matrix::Identity(2, 2), Matrix::Ones(2, 2)), ParameterError);
  }

  TEST_CASE("exponential spectrum decays log-linearly") {
    const GeneralizedSpectrum& s = exp_setup().spectrum;
    REQUIRE(s.rank >= 5);
    const Eigen::Index n = s.rank;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double x = static_cast<double>(i), y = std::log(s.eigenvalues[i]);
      sx += x, sy += y, sxx += x * x, sxy += x * y, syy += y * y;
    }
    const double cov = sxy - sx * sy / n, vx = sxx - sx * sx / n, vy = syy - sy * sy / n;
    const double r2 = cov * cov / (vx * vy);
    MESSAGE("rank " << n << ", r^2 of log lambda vs index " << r2);
    CHECK(cov < 0.0);
    CHECK(r2 > 0.95);
  }

  TEST_CASE("constant kernel gives constant G and Gbar") {
    const DiscretizedProblem p = make_problem(Mesh::uniform(0.0, 3.0, 3), Mesh::uniform(0.0, 2.0, 4),
                                              KernelSpec::tabulated(Matrix::Ones(4, 3)));
    const ExplorationMeasure rho = exploration_measure(p);
    CHECK((g_matrix(p).array() - 2.0).abs().maxCoeff() < 1e-14);
    const GbarMatrix gbar = gbar_matrix(p, rho);
    CHECK((gbar.values.array() - 18.0).abs().maxCoeff() < 1e-12);

    const auto t = assemble_triplet(with_data(p, {Vector::Zero(4), 0.0}), basis_matrix(rho),
                                    ObservationMetric::mesh_weighted);
    const TraceIdentity id = trace_identity(generalized_eigen(t.A, t.B), gbar, rho);
    CHECK(id.lhs == doctest::Approx(18.0).epsilon(1e-12));
    CHECK(id.rhs == doctest::Approx(18.0).epsilon(1e-12));
  }

  TEST_CASE("Gbar on a three-point toy against explicit loops") {
    const DiscretizedProblem p = toy3();
    const ExplorationMeasure rho = exploration_measure(p);
    const GbarMatrix gbar = gbar_matrix(p, rho);
    double z = 0.0;
    double dens[3];
    for (int k = 0; k < 3; ++k) {
      dens[k] = 0.0;
      for (int i = 0; i < 2; ++i) dens[k] += std::abs(p.kernel_values(i, k)) * p.obs.weights()[i];
      z += dens[k] * p.source.weights()[k];
    }
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        double g = 0.0;
        for (int i = 0; i < 2; ++i) g += p.kernel_values(i, j) * p.kernel_values(i, k) * p.obs.weights()[i];
        const double expected = g / ((dens[j] / z) * (dens[k] / z));
        CHECK(std::abs(gbar.values(j, k) - expected) < 1e-13 * expected);
      }
    }
  }

  TEST_CASE("trace identity and kernel bounds on the exponential problem") {
    const auto& setup = exp_setup();
    const ExplorationMeasure rho = exploration_measure(setup.problem);
    const auto t = assemble_triplet(with_data(setup.problem, {Vector::Zero(setup.problem.m()), 0.0}), setup.B,
                                    ObservationMetric::mesh_weighted);
    const GeneralizedSpectrum s = generalized_eigen(t.A, t.B);
    const GbarMatrix gbar = gbar_matrix(setup.problem, rho);
    const TraceIdentity id = trace_identity(s, gbar, rho);
    CHECK(id.relative_error < 1e-8);

    const double kmax = setup.problem.kernel_values.cwiseAbs().maxCoeff();
    CHECK(s.eigenvalues.sum() <= kmax * rho.normalizer * setup.problem.source.weights().sum());
    for (Eigen::Index j = 0; j < gbar.values.rows(); ++j) {
      for (Eigen::Index k = 0; k < gbar.values.cols(); ++k) {
        const double bound = kmax * rho.normalizer / std::max(rho.density[j], rho.density[k]);
        CHECK(gbar.values(j, k) <= bound * (1.0 + 1e-12));
      }
    }
  }

  TEST_CASE("FSOI projection") {
    testing::Rng rng(5);
    auto syn = testing::synthetic_problem(rng, 6, 0.0);
    syn.lambdas[5] = 0.0;
    const Matrix BV = syn.triplet.B * syn.V;
    const Matrix A = BV * syn.lambdas.asDiagonal() * BV.transpose();
    const GeneralizedSpectrum s = generalized_eigen(0.5 * (A + A.transpose()), syn.triplet.B);
    REQUIRE(s.rank == 5);
    const Matrix& B = syn.triplet.B;

    const Vector psi1 = s.eigenvectors.col(0);
    CHECK((fsoi_project(psi1, s, B) - psi1).norm() < 1e-12 * psi1.norm());
    const Vector null = s.eigenvectors.col(5);
    CHECK(fsoi_project(null, s, B).norm() < 1e-12 * null.norm());
    const Vector phi = testing::normal_vector(rng, 6);
    const Vector once = fsoi_project(phi, s, B);
    CHECK((fsoi_project(once, s, B) - once).norm() < 1e-10 * once.norm());

    CHECK(projected_error(phi, phi, s, B) == 0.0);
    CHECK(projected_error(phi + 3.0 * null, phi, s, B) < 1e-20 * phi.squaredNorm());
    const Vector c_true = Eigen::Vector2d(1.0, -2.0);
    const Vector c_hat = Eigen::Vector2d(1.5, 0.5);
    const Vector truth = s.eigenvectors.leftCols(2) * c_true;
    const Vector guess = s.eigenvectors.leftCols(2) * c_hat;
    CHECK(projected_error(guess, truth, s, B) == doctest::Approx(0.25 + 6.25).epsilon(1e-12));
  }
}

TEST_SUITE("regularize") {
  TEST_CASE("l2 solve on a diagonal system") {
    const auto t = make_triplet(diag({4.0, 1.0, 0.25}), Matrix::Identity(3, 3), Vector::Ones(3));
    const auto s = generalized_eigen(t.A, t.B);
    const Vector phi = solve_tikhonov(t, s, RegularizerKind::l2, 1.0).phi;
    CHECK((phi - Eigen::Vector3d(0.2, 0.5, 0.8)).cwiseAbs().maxCoeff() < 1e-15);
    const Vector tiny = solve_tikhonov(t, s, RegularizerKind::l2, 1e-12).phi;
    CHECK((tiny - Eigen::Vector3d(0.25, 1.0, 4.0)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(solve_tikhonov(t, s, RegularizerKind::l2, 0.0), ParameterError);
  }

  TEST_CASE("regularizer names round-trip") {
    for (auto kind : {RegularizerKind::l2, RegularizerKind::L2rho, RegularizerKind::rkhs}) {
      CHECK(parse_regularizer(to_string(kind)) == kind);
    }
    CHECK_THROWS_AS(parse_regularizer("tv"), ParameterError);
  }

  TEST_CASE("rank-one rkhs solve") {
    const auto t = make_triplet(diag({1.0, 0.0}), Matrix::Identity(2, 2), Eigen::Vector2d(1.0, 0.0));
    const auto s = generalized_eigen(t.A, t.B);
    REQUIRE(s.rank == 1);
    const Vector phi = rkhs_solve(t, s, 1.0).phi;
    CHECK((phi - 0.5 * s.eigenvectors.col(0)).norm() < 1e-15);
  }

  TEST_CASE("rkhs solve matches the dense penalty matrix") {
    testing::Rng rng(8);
    const Matrix X = testing::normal_matrix(rng, 4, 4);
    const Matrix A = X * X.transpose() + Matrix::Identity(4, 4);
    const Matrix B = (testing::normal_vector(rng, 4).cwiseAbs().array() + 0.5).matrix().asDiagonal();
    const Vector b = testing::normal_vector(rng, 4);
    const auto t = make_triplet(A, B, b);
    const auto s = generalized_eigen(A, B);
    REQUIRE(s.rank == 4);
    const Matrix Vinv = s.eigenvectors.inverse();
    const Matrix C = Vinv.transpose() * s.eigenvalues.cwiseInverse().asDiagonal() * Vinv;
    for (double lambda : {1e-3, 0.1, 2.0}) {
      const Vector direct = (A + lambda * C).lu().solve(b);
      const auto sol = rkhs_solve(t, s, lambda);
      CHECK(testing::relative_error(sol.phi, direct) < 1e-8);
      CHECK(sol.penalty_value == doctest::Approx(sol.phi.dot(C * sol.phi)).epsilon(1e-8));
      CHECK(sol.penalty_value == doctest::Approx(rkhs_penalty(sol.phi, s, B)).epsilon(1e-8));
    }
  }

  TEST_CASE("noiseless rkhs recovers psi_2") {
    const auto& setup = exp_setup();
    const auto t = setup.triplet(0.0, 1);
    const auto sol = rkhs_solve(t, setup.spectrum, 1e-12);
    CHECK(projected_error(sol.phi, setup.phi_true, setup.spectrum, setup.B) < 1e-6);
  }

  TEST_CASE("noisy rkhs solution stays in the FSOI") {
    const auto& setup = exp_setup();
    const auto t = setup.triplet(1.0, 2);
    const Vector phi = rkhs_solve(t, setup.spectrum, 1e-4).phi;
    const Vector outside = phi - fsoi_project(phi, setup.spectrum, setup.B);
    CHECK(std::sqrt(outside.dot(setup.B * outside)) < 1e-10 * std::sqrt(phi.dot(setup.B * phi)));
  }

  TEST_CASE("truncated pseudo-inverse") {
    const auto t = make_triplet(diag({1.0, 0.0}), Matrix::Identity(2, 2), Eigen::Vector2d(2.0, 0.0));
    const Vector phi = unregularized_pinv(t, generalized_eigen(t.A, t.B));
    CHECK((phi - Eigen::Vector2d(2.0, 0.0)).norm() < 1e-15);
  }

  TEST_CASE("pseudo-inverse on exact data") {
    const auto& setup = exp_setup();
    const Vector phi = unregularized_pinv(setup.triplet(0.0, 1), setup.spectrum);
    const Vector target = fsoi_project(setup.phi_true, setup.spectrum, setup.B);
    const double err = projected_error(phi, target, setup.spectrum, setup.B);
    MESSAGE("pinv projected error on exact data " << err);
    CHECK(err < 1e-6);
  }

  TEST_CASE("pseudo-inverse is worse than rkhs on noisy data") {
    const auto& setup = exp_setup();
    const auto t = setup.triplet(1.0, 3);
    const double pinv_err =
        projected_error(unregularized_pinv(t, setup.spectrum), setup.phi_true, setup.spectrum, setup.B);
    const auto fit = algorithm1(t);
    const double rkhs_err = projected_error(fit.solution.phi, setup.phi_true, setup.spectrum, setup.B);
    CHECK(pinv_err > rkhs_err);
  }

  TEST_CASE("algorithm on exact data fits the observations") {
    const auto& setup = exp_setup();
    const auto t = setup.triplet(0.0, 1);
    const auto fit = algorithm1(t);
    CHECK(fit.solution.loss_value < 1e-8 * t.y_norm_sq);
  }

  TEST_CASE("rkhs beats l2 and L2rho in median over seeds") {
    const auto& setup = exp_setup();
    std::vector<double> e_rkhs, e_l2, e_L2;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto t = setup.triplet(1.0, seed);
      auto err = [&](RegularizerKind kind) {
        const auto fit = solve_with_lcurve(t, setup.spectrum, kind);
        return projected_error(fit.solution.phi, setup.phi_true, setup.spectrum, setup.B);
      };
      e_rkhs.push_back(err(RegularizerKind::rkhs));
      e_l2.push_back(err(RegularizerKind::l2));
      e_L2.push_back(err(RegularizerKind::L2rho));
    }
    MESSAGE("medians rkhs " << median(e_rkhs) << " l2 " << median(e_l2) << " L2rho " << median(e_L2));
    CHECK(median(e_rkhs) < median(e_l2));
    CHECK(median(e_rkhs) < median(e_L2));
  }

  TEST_CASE("loss rises and penalty falls along the grid") {
    const auto& setup = exp_setup();
    const auto t = setup.triplet(0.5, 4);
    for (auto kind : {RegularizerKind::l2, RegularizerKind::L2rho, RegularizerKind::rkhs}) {
      const LCurve curve = build_lcurve(t, setup.spectrum, kind);
      for (std::size_t j = 1; j < curve.size(); ++j) {
        CHECK(curve.xs[j] >= curve.xs[j - 1] - 1e-9);
        CHECK(curve.ys[j] <= curve.ys[j - 1] + 1e-9);
      }
    }
  }
}

TEST_SUITE("lcurve") {
  TEST_CASE("grid is log spaced with the requested size") {
    const auto& setup = exp_setup();
    const LCurve curve = build_lcurve(setup.triplet(1.0, 1), setup.spectrum, RegularizerKind::rkhs);
    REQUIRE(curve.size() == 100);
    const double step = std::log(curve.lambdas[1] / curve.lambdas[0]);
    for (std::size_t j = 1; j < curve.size(); ++j) {
      CHECK(std::log(curve.lambdas[j] / curve.lambdas[j - 1]) == doctest::Approx(step).epsilon(1e-10));
    }
    const auto range = lambda_range(setup.triplet(1.0, 1), setup.spectrum, RegularizerKind::rkhs);
    CHECK(curve.lambdas.front() == doctest::Approx(range.first).epsilon(1e-12));
    CHECK(curve.lambdas.back() == doctest::Approx(range.second).epsilon(1e-12));
    CHECK_THROWS_AS(build_lcurve(setup.triplet(1.0, 1), setup.spectrum, RegularizerKind::rkhs, 5), ParameterError);
  }

  TEST_CASE("exact data drives the residual to zero at the small end") {
    const auto& setup = exp_setup();
    const auto t = setup.triplet(0.0, 1);
    const LCurve curve = build_lcurve(t, setup.spectrum, RegularizerKind::rkhs);
    CHECK(std::exp(curve.xs.front()) < 1e-8 * t.y_norm_sq);
    CHECK(curve.xs.front() < curve.xs.back());
  }

  TEST_CASE("straight line has zero curvature and ties go to the smallest lambda") {
    const std::vector<double> us{0.0, 1.0, 2.0, 3.0, 4.0};
    const std::vector<double> xs{0.0, 1.0, 2.0, 3.0, 4.0};
    const std::vector<double> ys{0.0, 2.0, 4.0, 6.0, 8.0};
    const auto k = curvature(us, xs, ys);
    CHECK(std::isnan(k.front()));
    CHECK(std::isnan(k.back()));
    for (std::size_t j = 1; j + 1 < k.size(); ++j) CHECK(std::abs(k[j]) < 1e-14);
    LCurve curve;
    curve.lambdas = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
    curve.xs = xs;
    curve.ys = ys;
    curve.curvatures = k;
    CHECK(select_lambda(curve).index == 1);
  }

  TEST_CASE("quarter circle curvature") {
    const double R = 2.5;
    std::vector<double> us, xs, ys;
    const int n = 60;
    for (int j = 0; j < n; ++j) {
      const double u = std::log(1e-3) + (std::log(1.0) - std::log(1e-3)) * j / (n - 1);
      const double angle = 0.5 * std::acos(-1.0) * std::pow(static_cast<double>(j) / (n - 1), 1.3);
      us.push_back(u);
      xs.push_back(R * std::cos(angle));
      ys.push_back(R * std::sin(angle));
    }
    const auto k = curvature(us, xs, ys);
    for (int j = 1; j + 1 < n; ++j) CHECK(std::abs(std::abs(k[j]) * R - 1.0) < 0.05);
  }

  TEST_CASE("undefined curvature everywhere") {
    LCurve curve;
    curve.lambdas = {1.0, 2.0, 3.0};
    curve.xs = curve.ys = {0.0, 0.0, 0.0};
    curve.curvatures = {std::nan(""), std::nan(""), std::nan("")};
    CHECK_THROWS_AS(select_lambda(curve), SelectionError);
  }

  TEST_CASE("selected rkhs lambda is strictly interior") {
    const auto& setup = exp_setup();
    const LCurve curve = build_lcurve(setup.triplet(1.0, 1), setup.spectrum, RegularizerKind::rkhs);
    CHECK(curve.selected_index > 0);
    CHECK(curve.selected_index + 1 < curve.size());
    CHECK(curve.selected_lambda() > curve.lambdas.front());
    CHECK(curve.selected_lambda() < curve.lambdas.back());
  }
}
