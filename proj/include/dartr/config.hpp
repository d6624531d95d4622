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
#include <string>
#include <vector>

namespace dartr {

/// Parameters of every subcommand. Text form is one `key = value` per line,
/// '#' starts a comment, lists are comma separated.
///
///   kernel        exp | poly | file:PATH
///   a, b, c, d    source interval (a, b], observation interval (c, d]
///   n             source points
///   dt            observation spacing
///   nsr           noise-to-signal ratios (solve uses the first)
///   dts           observation spacings of the mesh sweep
///   mesh_nsr      noise level of the mesh sweep
///   reference_dt  spacing of the reference problem of the mesh sweep
///   reg           l2 | L2 | rkhs | all
///   phi           eig2 | square | file:PATH
///   seed, sims    master seed and simulations per cell
///   grid          L-curve grid size
///   lambda        fixed lambda for solve; 0 selects by L-curve
///   decay, theta  theory spectrum: exponential | power and its rate
///   sigmas        theory noise levels
///   truncation    theory series length; 0 picks a default
///   out           output directory
struct RunConfig {
  std::string kernel = "exp";
  double a = 1.0, b = 5.0, c = 0.0, d = 5.0;
  long long n = 100;
  double dt = 0.01;
  std::vector<double> nsr{0.125, 0.25, 0.5, 1.0, 2.0};
  std::vector<double> dts{0.005, 0.01, 0.02, 0.04, 0.08};
  double mesh_nsr = 1.0;
  double reference_dt = 0.0005;
  std::string reg = "all";
  std::string phi = "eig2";
  std::uint64_t seed = 20240101;
  long long sims = 100;
  long long grid = 100;
  double lambda = 0.0;
  std::string decay = "exponential";
  double theta = 1.0;
  std::vector<double> sigmas{1e-2, 1e-3, 1e-4};
  long long truncation = 0;
  std::string out = "out";

  bool operator==(const RunConfig&) const = default;
};

/// Names accepted by set_config_value, in serialization order.
const std::vector<std::string>& config_keys();

/// Sets one key from its text value. Throws ConfigError on an unknown key or
/// a malformed value.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// Applies every line of `text` on top of `base`.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

/// Checks numeric ranges before any computation. Throws ConfigError.
void validate_config(const RunConfig& config);

}  // namespace dartr
