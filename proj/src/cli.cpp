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

#include "dartr/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <algorithm>
#include <cmath>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"

#include "dartr/algorithm.hpp"
#include "dartr/config.hpp"
#include "dartr/csv.hpp"
#include "dartr/errors.hpp"
#include "dartr/experiments.hpp"
#include "dartr/svg.hpp"
#include "dartr/theory.hpp"

namespace dartr {

namespace {

using nlohmann::json;

std::string path_in(const RunConfig& config, const std::string& name) {
  return (std::filesystem::path(config.out) / name).string();
}

void save_json(const std::string& path, const json& j) { write_text_atomic(path, j.dump(2) + "\n"); }

std::string file_argument(const std::string& value) { return value.substr(5); }

DiscretizedProblem build_problem(const RunConfig& config, double dt) {
  if (config.kernel.rfind("file:", 0) == 0) {
    KernelTable table = read_kernel_csv(file_argument(config.kernel));
    return make_problem(std::move(table.source), std::move(table.obs), KernelSpec::tabulated(std::move(table.values)));
  }
  const KernelSpec kernel = config.kernel == "poly" ? KernelSpec::polynomial() : KernelSpec::exponential();
  return make_uniform_problem(kernel, config.a, config.b, config.c, config.d, config.n, dt);
}

KernelSpec kernel_spec(const RunConfig& config) {
  return config.kernel == "poly" ? KernelSpec::polynomial() : KernelSpec::exponential();
}

std::vector<RegularizerKind> kinds_of(const RunConfig& config) {
  if (config.reg == "all") return {RegularizerKind::l2, RegularizerKind::L2rho, RegularizerKind::rkhs};
  return {parse_regularizer(config.reg)};
}

std::optional<Vector> phi_from_file(const RunConfig& config) {
  if (config.phi.rfind("file:", 0) != 0) return std::nullopt;
  const CsvData csv = read_csv(file_argument(config.phi));
  if (csv.header.size() < 2) throw ParameterError("phi file needs columns (s, phi)");
  Vector phi(static_cast<Eigen::Index>(csv.rows.size()));
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    if (csv.rows[i].size() < 2) throw ParameterError("phi file: short row");
    phi[static_cast<Eigen::Index>(i)] = parse_double(csv.rows[i][1]);
  }
  return phi;
}

PhiTrueKind phi_kind(const RunConfig& config) {
  return config.phi == "square" ? PhiTrueKind::square : PhiTrueKind::eig2;
}

struct Setup {
  DiscretizedProblem problem;
  ExplorationMeasure measure;
  Matrix B;
  GeneralizedSpectrum spectrum;
  Matrix A;
};

Setup setup(const RunConfig& config) {
  DiscretizedProblem problem = build_problem(config, config.dt);
  ExplorationMeasure measure = exploration_measure(problem);
  Matrix B = basis_matrix(measure);
  const RegressionTriplet blank = assemble_triplet(with_data(problem, {Vector::Zero(problem.m()), 0.0}), B);
  GeneralizedSpectrum spectrum = generalized_eigen(blank.A, blank.B);
  return {std::move(problem), std::move(measure), std::move(B), std::move(spectrum), blank.A};
}

int run_spectrum(const RunConfig& config) {
  const Setup s = setup(config);
  write_spectrum_csv(path_in(config, "spectrum.csv"), s.spectrum.eigenvalues);
  write_spectrum_csv(path_in(config, "eigenvalues_A.csv"), symmetric_eigenvalues(s.A));
  write_eigenvectors_csv(path_in(config, "eigenvectors.csv"), s.spectrum.eigenvectors);
  write_measure_csv(path_in(config, "measure.csv"), s.problem.source, s.measure);

  std::vector<PlotSeries> series;
  auto positive = [](const Vector& values, const std::string& name) {
    PlotSeries p{name, {}, {}, true};
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      if (values[i] > 0.0) {
        p.x.push_back(static_cast<double>(i + 1));
        p.y.push_back(values[i]);
      }
    }
    return p;
  };
  series.push_back(positive(symmetric_eigenvalues(s.A), "eig(A)"));
  series.push_back(positive(s.spectrum.eigenvalues, "eig(A, B)"));
  PlotOptions options;
  options.title = "Eigenvalues";
  options.x_label = "i";
  options.y_scale = AxisScale::log;
  write_text_atomic(path_in(config, "spectrum.svg"), emit_svg_plot(series, options));

  const DiscretizedProblem weighted_problem = with_data(s.problem, {Vector::Zero(s.problem.m()), 0.0});
  const RegressionTriplet weighted = assemble_triplet(weighted_problem, s.B, ObservationMetric::mesh_weighted);
  const TraceIdentity trace =
      trace_identity(generalized_eigen(weighted.A, weighted.B), gbar_matrix(s.problem, s.measure), s.measure);
  save_json(path_in(config, "summary.json"), {{"n", s.problem.n()},
                                               {"m", s.problem.m()},
                                               {"rank", s.spectrum.rank},
                                               {"rank_threshold", s.spectrum.rank_threshold},
                                               {"support_size", s.spectrum.support_size},
                                               {"trace_sum_eigenvalues", trace.lhs},
                                               {"trace_gbar", trace.rhs},
                                               {"trace_relative_error", trace.relative_error}});
  std::printf("rank %lld of %lld, lambda_1 = %.6e\n", static_cast<long long>(s.spectrum.rank),
              static_cast<long long>(s.problem.n()), s.spectrum.eigenvalues[0]);
  return 0;
}

int run_solve(const RunConfig& config) {
  const Setup s = setup(config);
  const auto from_file = phi_from_file(config);
  const Vector phi_true = from_file ? *from_file : phi_true_catalog(phi_kind(config), s.problem.source, &s.spectrum);
  const NoisyData data = generate_data(s.problem, phi_true, config.nsr.front(), config.seed);
  const RegressionTriplet triplet = assemble_triplet(with_data(s.problem, data), s.B);

  const auto kinds = kinds_of(config);
  std::vector<std::string> header{"s", "phi_true"};
  for (auto k : kinds) header.emplace_back(to_string(k));
  CsvWriter phi_csv(header);
  std::vector<Algorithm1Result> fits;
  json summary{{"sigma", data.sigma}, {"nsr", config.nsr.front()}, {"seed", config.seed}, {"rank", s.spectrum.rank}};
  std::vector<PlotSeries> curves;
  for (auto k : kinds) {
    Algorithm1Result fit = solve_with_lcurve(triplet, s.spectrum, k, static_cast<std::size_t>(config.grid));
    if (config.lambda > 0.0) fit.solution = solve_tikhonov(triplet, s.spectrum, k, config.lambda);
    const std::string name(to_string(k));
    summary["solutions"][name] = {{"lambda", fit.solution.lambda},
                                  {"lambda_lcurve", fit.curve.selected_lambda()},
                                  {"loss", fit.solution.loss_value},
                                  {"penalty", fit.solution.penalty_value},
                                  {"projected_error", projected_error(fit.solution.phi, phi_true, s.spectrum, s.B)}};
    if (kinds.size() > 1) write_lcurve_csv(path_in(config, "lcurve_" + name + ".csv"), fit.curve);
    curves.push_back({name, fit.curve.xs, fit.curve.ys, true});
    fits.push_back(std::move(fit));
  }
  write_lcurve_csv(path_in(config, "lcurve.csv"), fits.back().curve);
  for (Eigen::Index i = 0; i < s.problem.n(); ++i) {
    std::vector<CsvWriter::Field> row{s.problem.source.points()[i], phi_true[i]};
    for (const auto& f : fits) row.emplace_back(f.solution.phi[i]);
    phi_csv.add_row(row);
  }
  phi_csv.save(path_in(config, "phi_hat.csv"));
  PlotOptions options;
  options.title = "L-curve";
  options.x_label = "log residual norm";
  options.y_label = "log penalty norm";
  write_text_atomic(path_in(config, "lcurve.svg"),
                    kinds.size() == 1 ? lcurve_svg(fits.back().curve) : emit_svg_plot(curves, options));
  save_json(path_in(config, "summary.json"), summary);
  for (const auto& [name, v] : summary["solutions"].items()) {
    std::printf("%-5s lambda %.4e  Err %.4e\n", name.c_str(), v["lambda"].get<double>(),
                v["projected_error"].get<double>());
  }
  return 0;
}

ExperimentConfig experiment_config(const RunConfig& config) {
  ExperimentConfig e;
  e.kernel = kernel_spec(config);
  e.a = config.a;
  e.b = config.b;
  e.c = config.c;
  e.d = config.d;
  e.n = config.n;
  e.dt = config.dt;
  e.nsrs = config.nsr;
  e.dts = config.dts;
  e.mesh_nsr = config.mesh_nsr;
  e.reference_dt = config.reference_dt;
  e.phi = phi_kind(config);
  e.phi_values = phi_from_file(config);
  e.n_sims = static_cast<int>(config.sims);
  e.seed = config.seed;
  e.kinds = kinds_of(config);
  e.grid_size = static_cast<std::size_t>(config.grid);
  if (config.kernel.rfind("file:", 0) == 0) e.problem = build_problem(config, config.dt);
  return e;
}

void plot_sweep(const std::string& path, const SweepResult& result, const std::string& x_label) {
  std::vector<PlotSeries> series;
  bool positive = true;
  for (const auto& c : result.cells) {
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const PlotSeries& p) { return p.name == to_string(c.kind); });
    if (it == series.end()) {
      series.push_back({std::string(to_string(c.kind)), {}, {}, true});
      it = series.end() - 1;
    }
    it->x.push_back(c.sweep_value);
    it->y.push_back(c.mean_err);
    positive = positive && c.sweep_value > 0.0 && c.mean_err > 0.0;
  }
  PlotOptions options;
  options.title = "Mean projected error";
  options.x_label = x_label;
  options.y_label = "Err";
  if (positive) options.x_scale = options.y_scale = AxisScale::log;
  write_text_atomic(path, emit_svg_plot(series, options));
}

void print_cells(const SweepResult& result) {
  std::printf("%-12s %-5s %-12s %-12s\n", result.sweep_name.c_str(), "kind", "mean_err", "std_err");
  for (const auto& c : result.cells) {
    std::printf("%-12.4g %-5s %-12.4e %-12.4e\n", c.sweep_value, std::string(to_string(c.kind)).c_str(), c.mean_err,
                c.std_err);
  }
}

int run_sweep_noise(const RunConfig& config) {
  const SweepResult result = run_noise_sweep(experiment_config(config));
  write_sweep_csv(path_in(config, "noise_summary.csv"), result);
  write_sweep_wide_csv(path_in(config, "noise_err.csv"), result, "err");
  write_sweep_wide_csv(path_in(config, "noise_loss.csv"), result, "loss");
  CsvWriter rates({"kind", "slope", "intercept", "r_squared"});
  for (auto k : kinds_of(config)) {
    std::vector<double> sigmas, errs;
    for (const auto& c : result.cells) {
      if (c.kind == k) {
        sigmas.push_back(c.mean_sigma);
        errs.push_back(c.mean_err);
      }
    }
    RateFit fit{std::nan(""), std::nan(""), std::nan("")};
    try {
      fit = fit_rate(sigmas, errs);
    } catch (const Error&) {
      // Fewer than three positive points: no rate.
    }
    rates.add_row({std::string(to_string(k)), fit.slope, fit.intercept, fit.r_squared});
  }
  rates.save(path_in(config, "noise_rate.csv"));
  write_text_atomic(path_in(config, "noise_records.json"), sweep_json(result));
  plot_sweep(path_in(config, "noise_err.svg"), result, "nsr");
  print_cells(result);
  return 0;
}

int run_sweep_mesh(const RunConfig& config) {
  if (config.kernel.rfind("file:", 0) == 0) throw ConfigError("sweep-mesh needs kernel exp or poly");
  const SweepResult result = run_mesh_sweep(experiment_config(config));
  write_sweep_csv(path_in(config, "mesh_summary.csv"), result);
  write_sweep_wide_csv(path_in(config, "mesh_err.csv"), result, "err");
  write_sweep_wide_csv(path_in(config, "mesh_loss.csv"), result, "loss");
  write_text_atomic(path_in(config, "mesh_records.json"), sweep_json(result));
  plot_sweep(path_in(config, "mesh_err.svg"), result, "dt");
  print_cells(result);
  return 0;
}

int run_theory(const RunConfig& config) {
  const theory::Decay decay = config.decay == "power" ? theory::Decay::power : theory::Decay::exponential;
  const theory::SharpConstants sharp = theory::sharp_constants(config.theta, decay);
  const theory::LeadingAsymptotics leading = theory::leading_asymptotics(config.theta, decay);
  CsvWriter table({"sigma", "lambda_opt_hg", "lambda_opt_l2", "e_hg_min", "e_l2_min", "predicted_hg", "predicted_l2",
                   "ratio_hg", "ratio_l2", "leading_hg", "leading_l2"});
  std::printf("%-10s %-12s %-12s %-12s %-12s %-9s %-9s\n", "sigma", "lambda_hg", "lambda_l2", "e_hg_min", "e_l2_min",
              "ratio_hg", "ratio_l2");
  for (double sigma : config.sigmas) {
    const theory::SpectralModel model = decay == theory::Decay::power
                                            ? theory::SpectralModel::power(config.theta, sigma, config.truncation)
                                            : theory::SpectralModel::exponential(config.theta, sigma, config.truncation);
    const auto hg = theory::minimize_mse(model, theory::Estimator::hg);
    const auto l2 = theory::minimize_mse(model, theory::Estimator::l2);
    const double p_hg = sharp.c_hg * sigma, p_l2 = sharp.c_l2 * sigma;
    const double lead_hg = leading.error_hg.coefficient * std::pow(sigma, leading.error_hg.exponent);
    const double lead_l2 = leading.error_l2.coefficient * std::pow(sigma, leading.error_l2.exponent);
    table.add_row({sigma, hg.lambda, l2.lambda, hg.error, l2.error, p_hg, p_l2, hg.error / p_hg, l2.error / p_l2,
                   lead_hg, lead_l2});
    std::printf("%-10.3g %-12.4e %-12.4e %-12.4e %-12.4e %-9.4f %-9.4f\n", sigma, hg.lambda, l2.lambda, hg.error,
                l2.error, hg.error / p_hg, l2.error / p_l2);
  }
  table.save(path_in(config, "theory.csv"));
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Data-adaptive RKHS Tikhonov regularization for Fredholm equations of the first kind", "dartr"};
  app.require_subcommand(1);
  app.fallthrough(false);

  struct Command {
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config_path;
  };
  const std::vector<std::pair<std::string, std::string>> commands{
      {"spectrum", "Eigenvalues of A and of the generalized problem (A, B), and the exploration measure"},
      {"solve", "One noisy problem solved by one or all regularizers with L-curve selection"},
      {"sweep-noise", "Projected error of each regularizer over noise levels"},
      {"sweep-mesh", "Projected error over observation mesh spacings"},
      {"theory", "Optimal lambda and minimal MSE of the spectral model against the rate constants"}};
  std::map<std::string, Command> parsed;
  for (const auto& [name, description] : commands) {
    Command& cmd = parsed[name];
    cmd.app = app.add_subcommand(name, description);
    cmd.app->add_option("--config", cmd.config_path, "key = value file applied before the flags");
    for (const auto& key : config_keys()) {
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      cmd.options[key] = cmd.app->add_option("--" + flag, cmd.values[key], "config key '" + key + "'");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto& [name, cmd] : parsed) {
    if (!cmd.app->parsed()) continue;
    try {
      RunConfig config = cmd.config_path.empty() ? RunConfig{} : load_config(cmd.config_path);
      for (const auto& key : config_keys()) {
        if (cmd.options[key]->count() > 0) set_config_value(config, key, cmd.values[key]);
      }
      validate_config(config);
      if (name == "spectrum") return run_spectrum(config);
      if (name == "solve") return run_solve(config);
      if (name == "sweep-noise") return run_sweep_noise(config);
      if (name == "sweep-mesh") return run_sweep_mesh(config);
      return run_theory(config);
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return 2;
    } catch (const ParameterError& e) {
      std::cerr << "invalid parameter: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "numerical failure: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace dartr
