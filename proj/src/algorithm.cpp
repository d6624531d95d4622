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

#include "dartr/algorithm.hpp"

namespace dartr {

Algorithm1Result solve_with_lcurve(const RegressionTriplet& triplet, const GeneralizedSpectrum& spectrum,
                                   RegularizerKind kind, std::size_t grid_size) {
  Algorithm1Result out;
  out.spectrum = spectrum;
  out.curve = build_lcurve(triplet, spectrum, kind, grid_size);
  out.solution = solve_tikhonov(triplet, spectrum, kind, out.curve.selected_lambda());
  return out;
}

Algorithm1Result algorithm1(const RegressionTriplet& triplet, std::size_t grid_size) {
  return solve_with_lcurve(triplet, generalized_eigen(triplet.A, triplet.B), RegularizerKind::rkhs, grid_size);
}

}  // namespace dartr
