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

#include <utility>
#include <vector>

#include "curvkit/cone.hpp"
#include "curvkit/polyhedra.hpp"
#include "curvkit/random.hpp"

namespace curvkit {

/// A pair (x, n); n is any nonzero vector, only its direction matters.
struct NormalQuery {
  QVector point;
  QVector direction;
};

/// Value of the normal-cycle index function. `degenerate` marks directions on
/// a wall of the local normal fan, where the value is not locally constant.
struct IndexValue {
  int value = 0;
  bool degenerate = false;
};

/// The tangent structure of a union at one point, as the cones
/// C_S = intersection of the tangent cones of the parts in S, for every
/// nonempty set S of parts containing the point.
struct LocalCones {
  bool outside = false;
  bool interior = false;
  std::vector<std::pair<int, ConeGenerators>> terms;  // (|S|, generators of C_S)
};

LocalCones local_cones(const PolyUnion& a, const QVector& x);
IndexValue evaluate_index(const LocalCones& cones, const QVector& n);

/// chi(A n K n {n.(y-x) >= -delta}) - chi(A n K n {n.(y-x) >= delta}) in the
/// limit, computed exactly on the tangent cone. Zero off the boundary.
IndexValue index(const PolyUnion& a, const NormalQuery& q);

/// The same difference evaluated directly on A n box(x, r) at a fixed
/// positive delta, without reducing to the tangent cone.
int index_bruteforce(const PolyUnion& a, const NormalQuery& q, const Rational& r, const Rational& delta);

/// Half of the largest box radius around x inside which A agrees with
/// x + tangent cone: the box misses every part not containing x and every
/// constraint not tight at x.
Rational local_radius(const PolyUnion& a, const QVector& x);

struct SliceContribution {
  QVector point;
  int index = 0;
};

struct SliceReport {
  QVector direction;
  Rational threshold;
  std::vector<SliceContribution> contributions;  // nonzero terms only
  int sum = 0;
  int euler = 0;
  bool degenerate = false;
};

/// Evaluates slice sums for one union. Candidate points (vertices of all
/// nonempty intersections of parts) and their local cones are computed once.
class SliceEvaluator {
 public:
  explicit SliceEvaluator(PolyUnion a);

  const PolyUnion& set() const { return set_; }
  const std::vector<QVector>& candidates() const { return candidates_; }

  /// Sum of index(x, -v) over candidates with v.x <= t, next to
  /// chi(A n {v.x <= t}).
  SliceReport slice(const QVector& v, const Rational& t) const;

  /// Whether some (x, -v) with v.x = t lies in the support of the index.
  bool touching(const QVector& v, const Rational& t) const;

  /// Whether v is orthogonal to an edge direction of some intersection,
  /// so that two candidates of one polytope share a height.
  bool direction_degenerate(const QVector& v) const;

 private:
  PolyUnion set_;
  std::vector<QVector> candidates_;
  std::vector<LocalCones> cones_;
  std::vector<QVector> differences_;
};

SliceReport slice_sum(const PolyUnion& a, const QVector& v, const Rational& t);

/// A random direction v and a threshold t drawn uniformly from the range of
/// v.x over the candidates, widened by a tenth of its length on each side.
std::pair<QVector, Rational> random_halfspace(const SliceEvaluator& eval, Rng& rng);

bool touching_halfspace(const PolyUnion& a, const QVector& v, const Rational& t);

/// Parts of A n B: all pairwise intersections of parts that are nonempty.
PolyUnion union_intersection(const PolyUnion& a, const PolyUnion& b);
PolyUnion union_union(const PolyUnion& a, const PolyUnion& b);

struct AdditivityResult {
  IndexValue a;
  IndexValue b;
  IndexValue intersection;
  IndexValue united;
  bool holds = false;
  bool degenerate = false;
};

/// Checks index_A + index_B == index_{A n B} + index_{A u B} at q.
AdditivityResult additivity_check(const PolyUnion& a, const PolyUnion& b, const NormalQuery& q);

}  // namespace curvkit
