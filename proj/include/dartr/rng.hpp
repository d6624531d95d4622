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
#include <random>

#include <Eigen/Core>

namespace dartr {

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives the seed of stream `index` from a master seed:
/// splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Standard normal generator with a platform-independent transform.
///
/// Uniforms are the top 53 bits of std::mt19937_64 scaled to (0, 1]; normals
/// come from the Box-Muller transform, both outputs of each pair are used.
class NormalGenerator {
 public:
  explicit NormalGenerator(std::uint64_t seed);

  double operator()();
  Eigen::VectorXd vector(Eigen::Index size);

 private:
  double uniform();

  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace dartr
