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

#include "dartr/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "dartr/csv.hpp"
#include "dartr/errors.hpp"

namespace dartr {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    return parse_double(trim(value));
  } catch (const Error&) {
    throw ConfigError("'" + key + "': expected a number, got '" + value + "'");
  }
}

template <typename Int>
Int to_integer(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("'" + key + "': expected an integer, got '" + value + "'");
  }
  return out;
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
  if (out.empty()) throw ConfigError("'" + key + "': empty list");
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + format_double(values[i]);
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "kernel", "a",    "b",     "c",    "d",      "n",     "dt",     "nsr",        "dts",  "mesh_nsr",
      "reference_dt", "reg", "phi", "seed", "sims", "grid", "lambda", "decay", "theta", "sigmas",
      "truncation",   "out"};
  return keys;
}

void set_config_value(RunConfig& config, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "kernel") config.kernel = value;
  else if (key == "a") config.a = to_double(key, value);
  else if (key == "b") config.b = to_double(key, value);
  else if (key == "c") config.c = to_double(key, value);
  else if (key == "d") config.d = to_double(key, value);
  else if (key == "n") config.n = to_integer<long long>(key, value);
  else if (key == "dt") config.dt = to_double(key, value);
  else if (key == "nsr") config.nsr = to_list(key, value);
  else if (key == "dts") config.dts = to_list(key, value);
  else if (key == "mesh_nsr") config.mesh_nsr = to_double(key, value);
  else if (key == "reference_dt") config.reference_dt = to_double(key, value);
  else if (key == "reg") config.reg = value;
  else if (key == "phi") config.phi = value;
  else if (key == "seed") config.seed = to_integer<std::uint64_t>(key, value);
  else if (key == "sims") config.sims = to_integer<long long>(key, value);
  else if (key == "grid") config.grid = to_integer<long long>(key, value);
  else if (key == "lambda") config.lambda = to_double(key, value);
  else if (key == "decay") config.decay = value;
  else if (key == "theta") config.theta = to_double(key, value);
  else if (key == "sigmas") config.sigmas = to_list(key, value);
  else if (key == "truncation") config.truncation = to_integer<long long>(key, value);
  else if (key == "out") config.out = value;
  else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::stringstream ss(text);
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    set_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "kernel = " << c.kernel << '\n'
      << "a = " << format_double(c.a) << '\n'
      << "b = " << format_double(c.b) << '\n'
      << "c = " << format_double(c.c) << '\n'
      << "d = " << format_double(c.d) << '\n'
      << "n = " << c.n << '\n'
      << "dt = " << format_double(c.dt) << '\n'
      << "nsr = " << join(c.nsr) << '\n'
      << "dts = " << join(c.dts) << '\n'
      << "mesh_nsr = " << format_double(c.mesh_nsr) << '\n'
      << "reference_dt = " << format_double(c.reference_dt) << '\n'
      << "reg = " << c.reg << '\n'
      << "phi = " << c.phi << '\n'
      << "seed = " << c.seed << '\n'
      << "sims = " << c.sims << '\n'
      << "grid = " << c.grid << '\n'
      << "lambda = " << format_double(c.lambda) << '\n'
      << "decay = " << c.decay << '\n'
      << "theta = " << format_double(c.theta) << '\n'
      << "sigmas = " << join(c.sigmas) << '\n'
      << "truncation = " << c.truncation << '\n'
      << "out = " << c.out << '\n';
  return out.str();
}

void validate_config(const RunConfig& c) {
  require(c.kernel == "exp" || c.kernel == "poly" || c.kernel.rfind("file:", 0) == 0,
          "kernel must be exp, poly or file:PATH");
  for (double v : {c.a, c.b, c.c, c.d, c.dt, c.mesh_nsr, c.reference_dt, c.lambda, c.theta}) {
    require(std::isfinite(v), "numeric parameters must be finite");
  }
  require(c.a < c.b, "need a < b");
  require(c.c < c.d, "need c < d");
  require(c.n >= 2, "n must be at least 2");
  require(c.dt > 0.0 && c.dt < c.d - c.c, "dt must lie in (0, d - c)");
  for (double v : c.nsr) require(std::isfinite(v) && v >= 0.0, "nsr values must be nonnegative");
  for (double v : c.dts) require(std::isfinite(v) && v > 0.0 && v < c.d - c.c, "dts values must lie in (0, d - c)");
  require(c.mesh_nsr >= 0.0, "mesh_nsr must be nonnegative");
  require(c.reference_dt > 0.0 && c.reference_dt < c.d - c.c, "reference_dt must lie in (0, d - c)");
  require(c.reg == "l2" || c.reg == "L2" || c.reg == "L2rho" || c.reg == "rkhs" || c.reg == "all",
          "reg must be l2, L2, rkhs or all");
  require(c.phi == "eig2" || c.phi == "square" || c.phi.rfind("file:", 0) == 0, "phi must be eig2, square or file:PATH");
  require(c.sims >= 1, "sims must be at least 1");
  require(c.grid >= 10, "grid must be at least 10");
  require(c.lambda >= 0.0, "lambda must be nonnegative");
  require(c.decay == "exponential" || c.decay == "power", "decay must be exponential or power");
  require(c.theta > 0.0, "theta must be positive");
  require(c.decay != "power" || c.theta > 1.0, "power decay needs theta > 1");
  for (double v : c.sigmas) require(std::isfinite(v) && v > 0.0, "sigmas must be positive");
  require(c.truncation >= 0, "truncation must be nonnegative");
  require(!c.out.empty(), "out must be a path");
}

}  // namespace dartr
