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

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "curvkit/types.hpp"

namespace curvkit {

/// {x : normal . x <= offset}. The normal need not be a unit vector.
template <typename Scalar>
struct HalfspaceT {
  Vector<Scalar> normal;
  Scalar offset{};

  bool contains(const Vector<Scalar>& x) const { return normal.dot(x) <= offset; }
  bool on_boundary(const Vector<Scalar>& x) const { return normal.dot(x) == offset; }
};

template <typename Scalar>
struct ConvexPolytopeT {
  int dimension = 0;
  std::vector<HalfspaceT<Scalar>> constraints;
};

/// Finite union of convex polytopes sharing one ambient dimension. An empty
/// `parts` list (or a list of empty parts) represents the empty set.
template <typename Scalar>
struct PolyUnionT {
  int dimension = 0;
  std::vector<ConvexPolytopeT<Scalar>> parts;
};

using Halfspace = HalfspaceT<Rational>;
using ConvexPolytope = ConvexPolytopeT<Rational>;
using PolyUnion = PolyUnionT<Rational>;

/// Union of convex cones with a common apex. Each part is a list of
/// homogeneous constraints normal . (y - apex) <= 0 (offsets are zero).
struct PolyCone {
  QVector apex;
  std::vector<std::vector<Halfspace>> parts;
};

Halfspace make_halfspace(QVector normal, Rational offset);

/// Axis-aligned box [lo, hi].
ConvexPolytope make_box(const QVector& lo, const QVector& hi);
/// Box with half-width `radius` centred at `center`.
ConvexPolytope make_box(const QVector& center, const Rational& radius);
/// Simplex spanned by d+1 affinely independent points in R^d.
ConvexPolytope make_simplex(const std::vector<QVector>& points);

/// Checks dimensions, nonzero normals, and boundedness of every nonempty part.
PolyUnion make_union(int dimension, std::vector<ConvexPolytope> parts);

QMatrix constraint_matrix(const ConvexPolytope& p);
QVector constraint_offsets(const ConvexPolytope& p);

bool feasible(const ConvexPolytope& p);
bool is_bounded(const ConvexPolytope& p);
bool contains(const ConvexPolytope& p, const QVector& x);
bool contains(const PolyUnion& u, const QVector& x);

ConvexPolytope intersect(const ConvexPolytope& a, const ConvexPolytope& b);
ConvexPolytope intersect(const ConvexPolytope& a, std::span<const Halfspace> extra);

/// Extreme points (exact, no duplicates). Throws GeometryError for empty or
/// unbounded input.
std::vector<QVector> vertices(const ConvexPolytope& p);

/// Upper bound on the number of parts fed to 2^n inclusion-exclusion sums.
/// Defaults to 8; overridden by the CURVKIT_IE_CAP environment variable.
std::size_t inclusion_exclusion_cap();

/// Visits every index set S (ascending indices) whose intersection of parts is
/// nonempty, passing S and the intersection. Supersets of empty intersections
/// are pruned. Each part is first intersected with `extra`.
void for_each_nonempty_intersection(
    const PolyUnion& u, std::span<const Halfspace> extra,
    const std::function<void(const std::vector<int>&, const ConvexPolytope&)>& visit);

/// Euler characteristic by nerve inclusion-exclusion.
int euler(const PolyUnion& u);
int euler_with_halfspace(const PolyUnion& u, const Halfspace& h);
int euler_with(const PolyUnion& u, std::span<const Halfspace> extra);

/// Union of the tangent cones at x of the parts containing x.
PolyCone tangent_cone(const PolyUnion& u, const QVector& x);

// Face lattice ------------------------------------------------------------

struct Face {
  int dimension = 0;
  std::vector<int> vertex_ids;   // into FaceLattice::vertices, ascending
  std::vector<int> tight;        // constraints tight on the whole face
  std::vector<int> facets;       // face ids of dimension - 1
};

struct FaceLattice {
  std::vector<QVector> vertices;
  std::vector<Face> faces;  // faces[0] is the polytope itself

  std::vector<int> faces_of_dimension(int k) const;
};

FaceLattice face_lattice(const ConvexPolytope& p);

/// A nonnegative real with an optional exact rational value.
struct Measure {
  double value = 0.0;
  std::optional<Rational> exact;
};

/// k-dimensional volume of a k-face (counting measure for vertices). Exact
/// whenever the face's Gram factor is a rational square (always for k = d).
Measure face_volume(const FaceLattice& lattice, int face_id);

/// H^k(P): zero when dim P < k; throws when dim P > k.
Measure hausdorff_measure(const ConvexPolytope& p, int k);

}  // namespace curvkit
