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

#include "dartr/gamma.hpp"

#include <cmath>
#include <numbers>

#include "dartr/errors.hpp"

namespace dartr {

namespace {

constexpr double kG = 7.0;
constexpr double kCoefficients[] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos(double x) {
  // Gamma(x + 1) for x >= -1/2.
  double sum = kCoefficients[0];
  for (int k = 1; k < 9; ++k) sum += kCoefficients[k] / (x + k);
  const double t = x + kG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * sum;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(-x));
  return lanczos(x - 1.0);
}

}  // namespace dartr
