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

#include <optional>
#include <utility>
#include <vector>

#include "curvkit/dcfun.hpp"
#include "curvkit/linalg.hpp"
#include "curvkit/polyhedra.hpp"

namespace curvkit {

/// (det(A - B), (1/n!) sum_k (-1)^k binom(n,k) det((n-k) A + k B)).
template <typename Scalar>
std::pair<Scalar, Scalar> det_identity_check(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw InputError("determinant identity needs two square matrices of one order");
  const Eigen::Index n = a.rows();
  Scalar lhs = determinant<Scalar>(a - b);
  Scalar rhs = 0;
  Scalar binom = 1;
  Scalar factorial = 1;
  for (Eigen::Index k = 0; k <= n; ++k) {
    Matrix<Scalar> m = Scalar(static_cast<double>(n - k)) * a + Scalar(static_cast<double>(k)) * b;
    Scalar term = binom * determinant<Scalar>(m);
    rhs += (k % 2 == 0) ? term : Scalar(-term);
    binom = binom * Scalar(static_cast<double>(n - k)) / Scalar(static_cast<double>(k + 1));
    if (k > 0) factorial *= Scalar(static_cast<double>(k));
  }
  return {lhs, rhs / factorial};
}

struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dimension() const { return static_cast<int>(lo.size()); }
  double volume() const { return (hi - lo).prod(); }
};

/// Samples of f * rho_eps on a lattice with spacing about eps / n. The
/// lattice points with index 0..cells-1 along each axis are the centres of
/// the midpoint-rule cells of K; `margin` more points pad every side.
struct MollifiedField {
  Box domain;
  double epsilon = 0.0;
  Eigen::VectorXd spacing;
  std::vector<int> cells;  // per axis, inside K
  int margin = 0;
  std::vector<double> values;     // row-major over (cells + 2 margin)^d
  std::vector<double> gradients;  // d entries per lattice point: (grad f) * rho_eps
  double l1_gap = 0.0;         // int_K |f * rho_eps - f|
  std::optional<DCFunction> source;

  /// Value at a lattice index; indices run from -margin to cells + margin - 1.
  double at(const std::vector<int>& index) const;
  Eigen::VectorXd point(const std::vector<int>& index) const;
  Eigen::VectorXd gradient(const std::vector<int>& index) const;
  /// Centered differences of the mollified gradient; row i holds the
  /// derivative along axis i. Exactly rank one across a straight kink.
  Eigen::MatrixXd hessian(const std::vector<int>& index) const;

  std::size_t flat_index(const std::vector<int>& index) const;
};

/// Mollifies with the bump (1 - |u|^2/eps^2)^3, normalized to unit mass on
/// the lattice. `points_per_eps` >= 2 sets the spacing eps / points_per_eps.
MollifiedField mollify(const DCFunction& f, const Box& k, double epsilon, int points_per_eps = 4);
MollifiedField mollify(const MaxAffine& g, const Box& k, double epsilon, int points_per_eps = 4);

/// Midpoint-rule integral over K of |det H[I,J]| for the Hessian field
/// H = sum_i coeff_i Hess(field_i).
double minor_integral(const std::vector<const MollifiedField*>& fields, const std::vector<double>& coeffs,
                      const std::vector<int>& rows, const std::vector<int>& cols);

struct MinorBound {
  int order = 0;
  double lhs = 0.0;    // max over (I, J) of int_K |det minor of Hess(g - h)_eps|
  double rhs = 0.0;    // the bound for the maximizing (I, J)
  double slack = 0.0;  // quadrature slack allowed on top of rhs
  std::vector<int> rows;
  std::vector<int> cols;
  bool holds = false;  // lhs <= rhs + slack for every (I, J)
};

MinorBound minor_difference_bound(const MaxAffine& g, const MaxAffine& h, const Box& k, int order, double epsilon,
                                  int points_per_eps = 4);

struct LadderRung {
  double epsilon = 0.0;
  std::vector<MinorBound> bounds;  // orders 1..d
};

struct LadderReport {
  std::vector<LadderRung> rungs;
  /// For every order, the largest pairwise relative difference
  /// |a - b| / max(a, b) of the lhs values across rungs.
  std::vector<double> spread;
  bool bounded(double tolerance = 0.1) const;
  bool inequalities_hold() const;
};

LadderReport approximation_ladder(const DCFunction& f, const Box& k, const std::vector<double>& epsilons,
                                  int points_per_eps = 4);

struct MongeAmpereMass {
  double mass = 0.0;
  std::optional<Rational> exact;
  std::size_t vertices = 0;  // complex vertices found in K
  bool covers_vertex() const { return vertices > 0; }
};

/// Sum over the vertices of the linearity complex of g lying in K of the
/// volume of the subdifferential (the hull of the active gradients).
MongeAmpereMass monge_ampere_mass(const MaxAffine& g, const QVector& lo, const QVector& hi);

/// Volume of the convex hull of finitely many points (zero unless full
/// dimensional).
Measure hull_volume(const std::vector<QVector>& points);

}  // namespace curvkit
