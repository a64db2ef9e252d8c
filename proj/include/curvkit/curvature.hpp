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
#include <cstdint>
#include <optional>
#include <vector>

#include "curvkit/polyhedra.hpp"

namespace curvkit {

/// C_0..C_d with an absolute error bound per entry and the exact rational
/// value where every contributing angle and volume is exact.
struct CurvatureVector {
  Eigen::VectorXd value;
  Eigen::VectorXd error;
  std::vector<std::optional<Rational>> exact;

  static CurvatureVector zero(int dimension);
  int dimension() const { return static_cast<int>(value.size()) - 1; }

  CurvatureVector& operator+=(const CurvatureVector& other);
  CurvatureVector& operator-=(const CurvatureVector& other);
};

/// H^m(S^m) = 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_constant(int m);

/// <a^1 ^ ... ^ a^{d-1}, phi_k(x, n)>: each a^i lies in R^{2d} = R^d x R^d,
/// the x-part first. Expanded over the sequences sigma in {0,1}^{d-1} with
/// d-1-k ones, each term a d x d determinant with n in the last column.
double lk_form_eval(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& n,
                    const std::vector<Eigen::VectorXd>& a);

/// Controls the Gaussian estimator used for normal cones of dimension >= 4
/// that are not orthants. Face f of the polytope visited in stream s draws
/// from substream (seed, s, f).
struct AngleOptions {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t samples = 20000;
};

struct FaceAngle {
  int face_id = 0;
  int dimension = 0;
  double angle = 0.0;
  double error = 0.0;
  std::optional<Rational> exact;
  bool monte_carlo = false;
};

/// Normalized spherical measure of the normal cone of a face, taken in the
/// linear span of the cone's pointed part.
FaceAngle external_angle(const ConvexPolytope& p, const FaceLattice& lattice, int face_id,
                         const AngleOptions& options = {});

/// The face as a polytope: the constraints of p with the tight ones doubled.
ConvexPolytope face_polytope(const ConvexPolytope& p, const FaceLattice& lattice, int face_id);

CurvatureVector curvature_convex(const ConvexPolytope& p, const AngleOptions& options = {});

/// Inclusion-exclusion over the nonempty intersections of parts. Subset
/// number s in visiting order uses angle stream s.
CurvatureVector curvature_union(const PolyUnion& a, const AngleOptions& options = {});

/// Curvature measures of the Borel set `window`: every face contributes its
/// angle times the k-volume of face n window.
CurvatureVector curvature_localized(const ConvexPolytope& p, const ConvexPolytope& window,
                                    const AngleOptions& options = {});
CurvatureVector curvature_localized(const PolyUnion& a, const ConvexPolytope& window,
                                    const AngleOptions& options = {});

/// Image of A under x -> m x + b. Throws GeometryError when m is singular.
PolyUnion affine_pushforward(const PolyUnion& a, const QMatrix& m, const QVector& b);

}  // namespace curvkit
