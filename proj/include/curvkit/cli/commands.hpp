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
#include <optional>
#include <string>
#include <vector>

#include "curvkit/cli/report.hpp"
#include "curvkit/cli/scene.hpp"

namespace curvkit::cli {

/// Substream ids, one per command, so that commands sharing a seed draw
/// independent numbers.
enum class Stream : std::uint64_t { curvature = 1, gauss_bonnet = 2, crofton = 3, detlemma = 4 };

struct CurvatureOptions {
  std::optional<std::vector<Halfspace>> window;
  std::uint64_t seed = 0;
};
Report run_curvature(const Scene& scene, const CurvatureOptions& options);

struct GaussBonnetOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::vector<Halfspace> extra;  // evaluated after the random samples
};
Report run_gauss_bonnet(const Scene& scene, const GaussBonnetOptions& options);

struct CroftonOptions {
  int k = 0;
  int m = 1;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};
Report run_crofton(const Scene& scene, const CroftonOptions& options);

struct DetLemmaOptions {
  int dimension = 3;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  bool exact = false;
};
Report run_detlemma(const DetLemmaOptions& options);

struct ApproxOptions {
  std::vector<double> ladder{0.2, 0.1, 0.05, 0.025};
  int grid = 4;  // lattice points per mollifier radius
  std::size_t function = 0;
};
Report run_approx(const Scene& scene, const ApproxOptions& options);

struct IndexOptions {
  QVector point;
  QVector normal;
  bool bruteforce = false;
};
Report run_index(const Scene& scene, const IndexOptions& options);

}  // namespace curvkit::cli
