// Copyright 2026 The curvkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "curvkit/types.hpp"

namespace curvkit {

using Rng = std::mt19937_64;

/// One step of the splitmix64 generator.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of substream `index` of stream `stream` under a master seed. Equal
/// arguments give equal seeds; distinct arguments give decorrelated seeds.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

Eigen::VectorXd gaussian_vector(Rng& rng, Eigen::Index n);

/// Uniformly distributed direction on the sphere, rationalized with 40 bits.
/// The result is close to, but generally not exactly, a unit vector.
QVector random_direction(Rng& rng, Eigen::Index n);

}  // namespace curvkit
