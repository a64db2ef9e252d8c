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

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  QVector point;
};

/// Exact two-phase simplex (Bland's rule) for
///   maximize objective . x  subject to  a x <= b,  x free.
LpResult maximize(const QMatrix& a, const QVector& b, const QVector& objective);

/// Phase one only: is {x : a x <= b} nonempty?
bool is_feasible(const QMatrix& a, const QVector& b);

/// Largest s in [-1, 1] such that a x + s * 1 <= b has a solution, together
/// with the witness point. `value > 0` certifies a strictly feasible point,
/// `value == 0` a feasible system without one, anything else infeasibility.
LpResult max_slack(const QMatrix& a, const QVector& b);

/// As above, but only rows with `strict[i]` receive the slack term; the
/// remaining rows are plain constraints a_i x <= b_i.
LpResult max_slack(const QMatrix& a, const QVector& b, const std::vector<bool>& strict);

}  // namespace curvkit
