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

#include "curvkit/linalg.hpp"

namespace curvkit {

EchelonForm row_reduce(QMatrix m) {
  EchelonForm out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    Rational inv = 1 / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational factor = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

Eigen::Index rank(const QMatrix& m) {
  return static_cast<Eigen::Index>(row_reduce(m).pivots.size());
}

QMatrix nullspace(const QMatrix& m) {
  EchelonForm ef = row_reduce(m);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto p : ef.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

  QMatrix basis(n, static_cast<Eigen::Index>(free_cols.size()));
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    for (Eigen::Index r = 0; r < n; ++r) basis(r, k) = 0;
    Eigen::Index fc = free_cols[static_cast<std::size_t>(k)];
    basis(fc, k) = 1;
    for (std::size_t i = 0; i < ef.pivots.size(); ++i)
      basis(ef.pivots[i], k) = -ef.reduced(static_cast<Eigen::Index>(i), fc);
  }
  return basis;
}

bool solve(const QMatrix& m, const QVector& b, QVector& x) {
  QMatrix aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  EchelonForm ef = row_reduce(aug);
  if (!ef.pivots.empty() && ef.pivots.back() == m.cols()) return false;
  x = zeros(m.cols());
  for (std::size_t i = 0; i < ef.pivots.size(); ++i)
    x(ef.pivots[i]) = ef.reduced(static_cast<Eigen::Index>(i), m.cols());
  return true;
}

int affine_dimension(const std::vector<QVector>& points) {
  if (points.empty()) return -1;
  if (points.size() == 1) return 0;
  QMatrix diffs(points.front().size(), static_cast<Eigen::Index>(points.size() - 1));
  for (std::size_t i = 1; i < points.size(); ++i)
    diffs.col(static_cast<Eigen::Index>(i - 1)) = points[i] - points.front();
  return static_cast<int>(rank(diffs));
}

}  // namespace curvkit
