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

#include "dartr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "json.hpp"

#include "dartr/algorithm.hpp"
#include "dartr/csv.hpp"
#include "dartr/errors.hpp"
#include "dartr/parallel.hpp"
#include "dartr/rng.hpp"

namespace dartr {

namespace {

struct Reference {
  DiscretizedProblem problem;
  Matrix B;
  GeneralizedSpectrum spectrum;
  Vector phi_true;
};

DiscretizedProblem build(const ExperimentConfig& config, double dt) {
  return make_uniform_problem(config.kernel, config.a, config.b, config.c, config.d, config.n, dt);
}

// Measure, spectrum and true solution of a problem; A does not depend on y.
Reference reference_for(DiscretizedProblem problem, const ExperimentConfig& config) {
  Reference ref{std::move(problem), {}, {}, {}};
  ref.B = basis_matrix(exploration_measure(ref.problem));
  const auto blank = with_data(ref.problem, {Vector::Zero(ref.problem.m()), 0.0});
  const RegressionTriplet triplet = assemble_triplet(blank, ref.B);
  ref.spectrum = generalized_eigen(triplet.A, triplet.B);
  if (config.phi_values) {
    if (config.phi_values->size() != ref.problem.n()) throw ParameterError("phi_true length must equal n");
    ref.phi_true = *config.phi_values;
  } else {
    ref.phi_true = phi_true_catalog(config.phi, ref.problem.source, &ref.spectrum);
  }
  return ref;
}

// One simulation: all regularizers on the same data.
void simulate(const DiscretizedProblem& problem, const Matrix& B, const GeneralizedSpectrum& spectrum,
              const Reference& scoring, const ExperimentConfig& config, double nsr, double sweep_value, int sim,
              SimulationRecord* out) {
  const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(sim));
  const NoisyData data = generate_data(problem, scoring.phi_true, nsr, seed);
  const RegressionTriplet triplet = assemble_triplet(with_data(problem, data), B);
  for (std::size_t k = 0; k < config.kinds.size(); ++k) {
    const Algorithm1Result fit = solve_with_lcurve(triplet, spectrum, config.kinds[k], config.grid_size);
    SimulationRecord& r = out[k];
    r.sweep_value = sweep_value;
    r.kind = config.kinds[k];
    r.simulation = sim;
    r.seed = seed;
    r.sigma = data.sigma;
    r.lambda = fit.solution.lambda;
    r.err = projected_error(fit.solution.phi, scoring.phi_true, scoring.spectrum, scoring.B);
    r.loss = fit.solution.loss_value;
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n_sims < 1) throw ParameterError("n_sims must be at least 1");
  if (kinds.empty()) throw ParameterError("regularizer list is empty");
  if (nsrs.empty() || dts.empty()) throw ParameterError("sweep lists must be nonempty");
  if (n < 2) throw ParameterError("n must be at least 2");
  if (!(b > a) || !(d > c)) throw ParameterError("intervals must satisfy a < b and c < d");
  if (!(dt > 0.0) || !(reference_dt > 0.0)) throw ParameterError("mesh spacings must be positive");
  for (double v : nsrs) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("nsr values must be finite and nonnegative");
  }
  for (double v : dts) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError("dt values must be positive");
  }
  if (!(mesh_nsr >= 0.0)) throw ParameterError("mesh nsr must be nonnegative");
  if (grid_size < 10) throw ParameterError("grid size must be at least 10");
}

const CellSummary& SweepResult::cell(double sweep_value, RegularizerKind kind) const {
  for (const auto& c : cells) {
    if (c.sweep_value == sweep_value && c.kind == kind) return c;
  }
  throw ParameterError("no such sweep cell");
}

std::vector<double> SweepResult::mean_errors(RegularizerKind kind) const {
  std::vector<double> out;
  for (const auto& c : cells) {
    if (c.kind == kind) out.push_back(c.mean_err);
  }
  return out;
}

std::vector<CellSummary> summarize(const std::vector<SimulationRecord>& records) {
  std::vector<CellSummary> cells;
  std::vector<std::vector<const SimulationRecord*>> members;
  for (const auto& r : records) {
    std::size_t j = 0;
    while (j < cells.size() && !(cells[j].sweep_value == r.sweep_value && cells[j].kind == r.kind)) ++j;
    if (j == cells.size()) {
      cells.push_back({r.sweep_value, r.kind});
      members.emplace_back();
    }
    members[j].push_back(&r);
  }
  for (std::size_t j = 0; j < cells.size(); ++j) {
    auto& rs = members[j];
    std::stable_sort(rs.begin(), rs.end(),
                     [](const SimulationRecord* x, const SimulationRecord* y) { return x->simulation < y->simulation; });
    const double count = static_cast<double>(rs.size());
    double se = 0.0, sl = 0.0, ss = 0.0;
    for (const auto* r : rs) {
      se += r->err;
      sl += r->loss;
      ss += r->sigma;
    }
    CellSummary& c = cells[j];
    c.count = static_cast<int>(rs.size());
    c.mean_err = se / count;
    c.mean_loss = sl / count;
    c.mean_sigma = ss / count;
    double ve = 0.0, vl = 0.0;
    for (const auto* r : rs) {
      ve += (r->err - c.mean_err) * (r->err - c.mean_err);
      vl += (r->loss - c.mean_loss) * (r->loss - c.mean_loss);
    }
    c.std_err = std::sqrt(ve / count);
    c.std_loss = std::sqrt(vl / count);
  }
  std::stable_sort(cells.begin(), cells.end(), [](const CellSummary& x, const CellSummary& y) {
    return x.sweep_value != y.sweep_value ? x.sweep_value < y.sweep_value : x.kind < y.kind;
  });
  return cells;
}

SweepResult run_noise_sweep(const ExperimentConfig& config) {
  config.validate();
  const Reference ref = reference_for(config.problem ? *config.problem : build(config, config.dt), config);

  const std::size_t kinds = config.kinds.size();
  const std::size_t sims = static_cast<std::size_t>(config.n_sims);
  SweepResult result;
  result.sweep_name = "nsr";
  result.fsoi_rank = ref.spectrum.rank;
  result.records.resize(config.nsrs.size() * sims * kinds);
  parallel_for(config.nsrs.size() * sims, [&](std::size_t task) {
    const std::size_t v = task / sims, sim = task % sims;
    simulate(ref.problem, ref.B, ref.spectrum, ref, config, config.nsrs[v], config.nsrs[v], static_cast<int>(sim),
             &result.records[task * kinds]);
  });
  result.cells = summarize(result.records);
  return result;
}

SweepResult run_mesh_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.kernel.kind == KernelKind::tabulated || config.problem) {
    throw ParameterError("the mesh sweep needs an analytic kernel");
  }
  const Reference ref = reference_for(build(config, config.reference_dt), config);

  struct Level {
    DiscretizedProblem problem;
    Matrix B;
    GeneralizedSpectrum spectrum;
  };
  std::vector<Level> levels;
  for (double dt : config.dts) {
    Reference own = reference_for(build(config, dt), config);
    levels.push_back({std::move(own.problem), std::move(own.B), std::move(own.spectrum)});
  }

  const std::size_t kinds = config.kinds.size();
  const std::size_t sims = static_cast<std::size_t>(config.n_sims);
  SweepResult result;
  result.sweep_name = "dt";
  result.fsoi_rank = ref.spectrum.rank;
  result.records.resize(config.dts.size() * sims * kinds);
  parallel_for(config.dts.size() * sims, [&](std::size_t task) {
    const std::size_t v = task / sims, sim = task % sims;
    const Level& level = levels[v];
    simulate(level.problem, level.B, level.spectrum, ref, config, config.mesh_nsr, config.dts[v],
             static_cast<int>(sim), &result.records[task * kinds]);
  });
  result.cells = summarize(result.records);
  return result;
}

RateFit fit_rate(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw ParameterError("fit_rate: length mismatch");
  if (xs.size() < 3) throw ParameterError("fit_rate: need at least three points");
  const std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw DomainError("fit_rate: values must be positive");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_rate: x values are all equal");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return fit;
}

void write_sweep_csv(const std::string& path, const SweepResult& result) {
  CsvWriter writer({"sweep_value", "kind", "mean_err", "std_err", "mean_loss", "std_loss"});
  for (const auto& c : result.cells) {
    writer.add_row({c.sweep_value, std::string(to_string(c.kind)), c.mean_err, c.std_err, c.mean_loss, c.std_loss});
  }
  writer.save(path);
}

void write_sweep_wide_csv(const std::string& path, const SweepResult& result, const std::string& field) {
  if (field != "err" && field != "loss") throw ParameterError("field must be err or loss");
  std::vector<double> values;
  std::vector<RegularizerKind> kinds;
  for (const auto& c : result.cells) {
    if (std::find(values.begin(), values.end(), c.sweep_value) == values.end()) values.push_back(c.sweep_value);
    if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) kinds.push_back(c.kind);
  }
  std::vector<std::string> header{result.sweep_name};
  for (auto k : kinds) {
    header.push_back(std::string(to_string(k)) + "_mean_" + field);
    header.push_back(std::string(to_string(k)) + "_std_" + field);
  }
  CsvWriter writer(header);
  for (double v : values) {
    std::vector<CsvWriter::Field> row{v};
    for (auto k : kinds) {
      const CellSummary& c = result.cell(v, k);
      row.emplace_back(field == "err" ? c.mean_err : c.mean_loss);
      row.emplace_back(field == "err" ? c.std_err : c.std_loss);
    }
    writer.add_row(row);
  }
  writer.save(path);
}

std::string sweep_json(const SweepResult& result) {
  nlohmann::json j;
  j["sweep"] = result.sweep_name;
  j["fsoi_rank"] = result.fsoi_rank;
  j["std_convention"] = "population";
  for (const auto& c : result.cells) {
    j["cells"].push_back({{"sweep_value", c.sweep_value},
                          {"kind", to_string(c.kind)},
                          {"mean_err", c.mean_err},
                          {"std_err", c.std_err},
                          {"mean_loss", c.mean_loss},
                          {"std_loss", c.std_loss},
                          {"count", c.count}});
  }
  for (const auto& r : result.records) {
    j["records"].push_back({{"sweep_value", r.sweep_value},
                            {"kind", to_string(r.kind)},
                            {"simulation", r.simulation},
                            {"seed", r.seed},
                            {"sigma", r.sigma},
                            {"lambda", r.lambda},
                            {"err", r.err},
                            {"loss", r.loss}});
  }
  return j.dump(2) + "\n";
}

}  // namespace dartr
