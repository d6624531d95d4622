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
#include <vector>

#include "dartr/regularize.hpp"

namespace dartr {

struct ExperimentConfig {
  KernelSpec kernel = KernelSpec::exponential();
  double a = 1.0, b = 5.0, c = 0.0, d = 5.0;
  Eigen::Index n = 100;
  double dt = 0.01;
  std::vector<double> nsrs{0.125, 0.25, 0.5, 1.0, 2.0};
  std::vector<double> dts{0.005, 0.01, 0.02, 0.04, 0.08};
  double mesh_nsr = 1.0;
  double reference_dt = 0.0005;
  PhiTrueKind phi = PhiTrueKind::eig2;
  std::optional<Vector> phi_values;  // overrides `phi` when set
  int n_sims = 100;
  std::uint64_t seed = 20240101;
  std::vector<RegularizerKind> kinds{RegularizerKind::l2, RegularizerKind::L2rho, RegularizerKind::rkhs};
  std::size_t grid_size = 100;
  /// Replaces the uniform analytic setup of the noise sweep, e.g. with a
  /// tabulated kernel.
  std::optional<DiscretizedProblem> problem;

  /// Throws ParameterError on an invalid field.
  void validate() const;
};

struct SimulationRecord {
  double sweep_value = 0.0;
  RegularizerKind kind = RegularizerKind::rkhs;
  int simulation = 0;
  std::uint64_t seed = 0;
  double sigma = 0.0;
  double lambda = 0.0;
  double err = 0.0;
  double loss = 0.0;
};

/// Mean and population standard deviation over the simulations of a cell.
struct CellSummary {
  double sweep_value = 0.0;
  RegularizerKind kind = RegularizerKind::rkhs;
  double mean_err = 0.0, std_err = 0.0;
  double mean_loss = 0.0, std_loss = 0.0;
  double mean_sigma = 0.0;
  int count = 0;
};

struct SweepResult {
  std::string sweep_name;  // "nsr" or "dt"
  std::vector<CellSummary> cells;
  std::vector<SimulationRecord> records;  // ordered by value, simulation, kind
  Eigen::Index fsoi_rank = 0;

  const CellSummary& cell(double sweep_value, RegularizerKind kind) const;
  /// Mean errors of `kind` in sweep order.
  std::vector<double> mean_errors(RegularizerKind kind) const;
};

/// Simulation i of every cell uses derive_seed(config.seed, i), so cells share
/// their noise draws up to scale.
SweepResult run_noise_sweep(const ExperimentConfig& config);

/// Errors are measured against the FSOI, measure and psi_2 of the problem
/// observed at config.reference_dt.
SweepResult run_mesh_sweep(const ExperimentConfig& config);

/// Cell statistics from raw records. Cells are sorted by (sweep value, kind)
/// and each cell is reduced in simulation order, so the input order does not
/// matter.
std::vector<CellSummary> summarize(const std::vector<SimulationRecord>& records);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares line through (log x, log y). Needs three points; throws
/// DomainError on a nonpositive value.
RateFit fit_rate(const std::vector<double>& xs, const std::vector<double>& ys);

/// CSV (sweep_value, kind, mean_err, std_err, mean_loss, std_loss); std is the
/// population standard deviation.
void write_sweep_csv(const std::string& path, const SweepResult& result);
/// Wide CSV: sweep value then mean and std of `field` ("err" or "loss") per kind.
void write_sweep_wide_csv(const std::string& path, const SweepResult& result, const std::string& field);
/// Full result including every record with its seed and selected lambda.
std::string sweep_json(const SweepResult& result);

}  // namespace dartr
