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

#include <vector>

#include "curvkit/types.hpp"

namespace curvkit {

/// Minimal generators of a polyhedral cone: the cone equals
/// span(lineality) + cone(rays). Rays are primitive integer vectors.
struct ConeGenerators {
  std::vector<QVector> lineality;
  std::vector<QVector> rays;

  bool is_zero_cone() const { return lineality.empty() && rays.empty(); }
};

/// Double description (Motzkin) enumeration of {y in R^n : rows * y <= 0}.
ConeGenerators cone_generators(const QMatrix& rows);

/// Whether direction . u > 0 for some u in the cone.
bool has_positive_direction(const ConeGenerators& cone, const QVector& direction);

}  // namespace curvkit
