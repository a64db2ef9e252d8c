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
#include <functional>

#include "curvkit/curvature.hpp"
#include "curvkit/polyhedra.hpp"
#include "curvkit/random.hpp"

namespace curvkit {

/// An affine m-flat z + span(basis): `basis` is d x m with orthonormal
/// columns and `offset` is orthogonal to them.
struct AffineSubspace {
  int dimension = 0;
  Eigen::MatrixXd basis;
  Eigen::VectorXd offset;

  int ambient_dimension() const { return static_cast<int>(offset.size()); }
};

/// The flat with basis and offset rounded to multiples of 2^-bits.
struct RationalFlat {
  QMatrix basis;
  QVector offset;
};

RationalFlat rationalize(const AffineSubspace& e, int bits = 40);

/// Gamma((i+1)/2) Gamma((j+1)/2) / (Gamma((d+1)/2) Gamma((i+j-d+1)/2)).
double beta(int d, int i, int j);

/// Volume of the unit ball in R^j.
double ball_volume(int j);

/// Orthonormal m-frame distributed by the rotation-invariant measure.
Eigen::MatrixXd sample_grassmann(int d, int m, Rng& rng);

struct WeightedFlat {
  AffineSubspace flat;
  double weight = 0.0;
};

/// L uniform on G(d, m) and z uniform in the ball of radius R about the
/// projection of `center` onto L^perp; the weight is that ball's volume.
WeightedFlat sample_affine_hitting(int d, int m, double radius, const Eigen::VectorXd& center, Rng& rng);

/// A n E in the coordinates u of E (x = z + B u), with rationalized B and z.
PolyUnion restrict(const PolyUnion& a, const RationalFlat& e);
PolyUnion restrict(const PolyUnion& a, const AffineSubspace& e);

/// False when the flat is tangent to some nonempty full-dimensional
/// intersection of parts: it meets the intersection but misses its interior.
bool is_transversal(const PolyUnion& a, const RationalFlat& e);
bool is_transversal(const PolyUnion& a, const AffineSubspace& e);

/// Centre of the bounding box of the scene's vertices and 1.1 times the
/// largest distance from it to a vertex.
std::pair<Eigen::VectorXd, double> covering_ball(const PolyUnion& a);

struct CroftonEstimate {
  int k = 0;
  int m = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::size_t rejected = 0;
  double radius = 0.0;
  double reference = 0.0;

  /// |mean - reference| <= sigmas * standard_error and
  /// standard_error <= relative * reference.
  bool agrees(double sigmas, double relative) const;
};

/// Monte Carlo estimate of the integral of C_k(A n E) over affine m-flats
/// next to beta(d, d+k-m, m) C_{d+k-m}(A). A radius <= 0 selects the
/// covering ball. Draw j uses substream (seed, stream, j).
CroftonEstimate crofton_estimate(const PolyUnion& a, int k, int m, std::size_t samples, double radius,
                                 std::uint64_t seed, std::uint64_t stream = 0);

struct DecompositionResult {
  double direct_mean = 0.0;
  double direct_error = 0.0;
  double staged_mean = 0.0;
  double staged_error = 0.0;
  double z = 0.0;
  double p_value = 1.0;

  bool passed(double level = 0.01) const { return p_value > level; }
};

/// Whether the segment of the flat inside the box is nonempty (lines only,
/// floating point slab test).
bool line_hits_box(const AffineSubspace& line, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

/// Compares mu^d_i sampled directly with mu^d_i sampled as an i-flat inside
/// an m-flat, on an integrand of flats (default: the line meets [0,1]^d).
/// Requires 1 <= i < m <= d-1.
DecompositionResult decomposition_check(int d, int m, int i, std::size_t samples, std::uint64_t seed,
                                        const std::function<double(const AffineSubspace&)>& integrand = {});

}  // namespace curvkit
