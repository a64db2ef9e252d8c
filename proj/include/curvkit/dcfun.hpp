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

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "curvkit/polyhedra.hpp"
#include "curvkit/types.hpp"

namespace curvkit {

/// x -> gradient . x + offset
template <typename Scalar>
struct AffinePieceT {
  Vector<Scalar> gradient;
  Scalar offset{};

  Scalar operator()(const Vector<Scalar>& x) const { return gradient.dot(x) + offset; }
};

/// Convex piecewise-linear function x -> max_i piece_i(x).
template <typename Scalar>
struct MaxAffineT {
  int dimension = 0;
  std::vector<AffinePieceT<Scalar>> pieces;

  Scalar operator()(const Vector<Scalar>& x) const {
    Scalar best = pieces.front()(x);
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      Scalar v = pieces[i](x);
      if (v > best) best = v;
    }
    return best;
  }
};

/// f = plus - minus, both convex.
template <typename Scalar>
struct DCFunctionT {
  MaxAffineT<Scalar> plus;
  MaxAffineT<Scalar> minus;

  int dimension() const { return plus.dimension; }
  Scalar operator()(const Vector<Scalar>& x) const { return plus(x) - minus(x); }
};

using AffinePiece = AffinePieceT<Rational>;
using MaxAffine = MaxAffineT<Rational>;
using DCFunction = DCFunctionT<Rational>;

/// Checks that there is at least one piece and that dimensions agree.
MaxAffine make_max_affine(int dimension, std::vector<AffinePiece> pieces);
MaxAffine constant_function(int dimension, const Rational& value = 0);
DCFunction make_dc(MaxAffine plus, MaxAffine minus);
/// A convex function viewed as g - 0.
DCFunction make_dc(MaxAffine plus);

/// Removes repeated gradients, keeping the largest offset for each.
MaxAffine canonical(const MaxAffine& f);

DCFunctionT<double> to_double(const DCFunction& f);

Rational eval(const DCFunction& f, const QVector& x);

struct SubdifferentialHull {
  std::vector<QVector> generators;
};

/// Clarke subdifferential of a piecewise-linear d.c. function, given as the
/// gradients of the full-dimensional linearity cells whose closure contains x.
SubdifferentialHull clarke_subdifferential(const DCFunction& f, const QVector& x);

/// Exact nearest point to the origin in the convex hull of `points`.
QVector min_norm_point(const std::vector<QVector>& points);

struct RegularityCertificate {
  Rational value;
  Rational epsilon;
  /// Point with c < f < c + eps and a subgradient of norm < eps, if any.
  std::optional<QVector> witness;
  /// Smallest hull distance among the cells meeting the slab (infinity when
  /// no cell meets it).
  double min_distance = std::numeric_limits<double>::infinity();
  std::size_t cells_checked = 0;

  bool regular() const { return !witness.has_value(); }
};

/// Upper bound on the number of arrangement cells visited by
/// is_weakly_regular. Defaults to 65536; CURVKIT_CELL_CAP overrides it.
std::size_t arrangement_cell_cap();

/// Decides whether c is a weakly regular value of f at scale eps by walking
/// the cells of the arrangement of piece-maximality regions.
RegularityCertificate is_weakly_regular(const DCFunction& f, const Rational& c,
                                        const Rational& epsilon);

/// x -> max(0, f(x) - c) = max(g - c, h) - h.
DCFunction aura_from_sublevel(const DCFunction& f, const Rational& c);

/// x -> max(0, max_i (n_i . x - b_i) / |n_i|). Rows whose norm is irrational
/// are scaled by a 40-bit rational approximation of 1 / |n_i|, which leaves
/// the zero set unchanged.
DCFunction polytope_aura(const ConvexPolytope& p);

/// x -> max(v . x - t, 0).
DCFunction halfspace_aura(const QVector& v, const Rational& t);

/// f + g, an aura of the intersection of the zero sets.
DCFunction combine_auras(const DCFunction& f, const DCFunction& g);

/// True iff some common point x admits a unit n with n normal to A at x and
/// -n normal to B at x. Decided part by part: P and Q touch when they meet
/// and admit a weakly separating hyperplane.
bool touches(const PolyUnion& a, const PolyUnion& b);
bool touches(const ConvexPolytope& p, const ConvexPolytope& q);

}  // namespace curvkit
