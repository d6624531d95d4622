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

#include "dartr/lcurve.hpp"

namespace dartr {

struct Algorithm1Result {
  RegularizedSolution solution;
  GeneralizedSpectrum spectrum;
  LCurve curve;
};

/// Generalized eigensolve of (A, B), transformed RKHS system, L-curve
/// selection over the range of Lambda and the back-transformed estimator.
Algorithm1Result algorithm1(const RegressionTriplet& triplet, std::size_t grid_size = 100);

/// Same pipeline for any regularizer, reusing a precomputed spectrum.
Algorithm1Result solve_with_lcurve(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum,
                                   RegularizerKind kind, std::size_t grid_size = 100);

}  // namespace dartr
