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

#include <type_traits>
#include <vector>

#include "curvkit/types.hpp"

namespace curvkit {

/// Row-reduced echelon form computed in exact arithmetic; `pivots` lists the
/// pivot columns in increasing order.
struct EchelonForm {
  QMatrix reduced;
  std::vector<Eigen::Index> pivots;
};

EchelonForm row_reduce(QMatrix m);

Eigen::Index rank(const QMatrix& m);

/// Columns form a basis of {x : m x = 0}.
QMatrix nullspace(const QMatrix& m);

/// Solves m x = b exactly; returns false when the system is inconsistent.
/// Any solution is returned when the solution set is not a single point.
bool solve(const QMatrix& m, const QVector& b, QVector& x);

/// Affine dimension of a finite point set (-1 for the empty set).
int affine_dimension(const std::vector<QVector>& points);

/// Determinant. Floating types go through Eigen's LU; exact types use
/// pivoting on the first nonzero entry so no value is ever rounded.
template <typename Scalar>
Scalar determinant(const Matrix<Scalar>& a) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    if (a.rows() == 0) return Scalar(1);
    return a.determinant();
  } else {
    const Eigen::Index n = a.rows();
    Matrix<Scalar> m = a;
    Scalar det = 1;
    for (Eigen::Index col = 0; col < n; ++col) {
      Eigen::Index pivot = col;
      while (pivot < n && m(pivot, col) == 0) ++pivot;
      if (pivot == n) return Scalar(0);
      if (pivot != col) {
        m.row(pivot).swap(m.row(col));
        det = -det;
      }
      det *= m(col, col);
      for (Eigen::Index r = col + 1; r < n; ++r) {
        if (m(r, col) == 0) continue;
        Scalar factor = m(r, col) / m(col, col);
        for (Eigen::Index c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
      }
    }
    return det;
  }
}

}  // namespace curvkit
