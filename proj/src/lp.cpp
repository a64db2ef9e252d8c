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

#include "curvkit/lp.hpp"

#include <vector>

namespace curvkit {
namespace {

struct Tableau {
  std::vector<std::vector<Rational>> rows;  // m x columns
  std::vector<Rational> rhs;
  std::vector<int> basis;
  std::vector<Rational> reduced;  // reduced costs for the current objective
  Rational objective_value;
  int columns = 0;

  void pivot(std::size_t r, int col) {
    auto& prow = rows[r];
    Rational inv = 1 / prow[static_cast<std::size_t>(col)];
    for (auto& v : prow)
      if (v != 0) v *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      Rational f = rows[i][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int j = 0; j < columns; ++j) {
        const Rational& pv = prow[static_cast<std::size_t>(j)];
        if (pv != 0) rows[i][static_cast<std::size_t>(j)] -= f * pv;
      }
      rhs[i] -= f * rhs[r];
    }
    Rational f = reduced[static_cast<std::size_t>(col)];
    if (f != 0) {
      for (int j = 0; j < columns; ++j) {
        const Rational& pv = prow[static_cast<std::size_t>(j)];
        if (pv != 0) reduced[static_cast<std::size_t>(j)] -= f * pv;
      }
      objective_value += f * rhs[r];
    }
    basis[r] = col;
  }

  void set_objective(const std::vector<Rational>& cost) {
    reduced = cost;
    objective_value = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = cost[static_cast<std::size_t>(basis[i])];
      if (cb == 0) continue;
      for (int j = 0; j < columns; ++j)
        if (rows[i][static_cast<std::size_t>(j)] != 0)
          reduced[static_cast<std::size_t>(j)] -= cb * rows[i][static_cast<std::size_t>(j)];
      objective_value += cb * rhs[i];
    }
  }

  // Returns false when unbounded.
  bool run(int allowed_columns) {
    for (;;) {
      int entering = -1;
      for (int j = 0; j < allowed_columns; ++j)
        if (reduced[static_cast<std::size_t>(j)] > 0) {
          entering = j;
          break;
        }
      if (entering < 0) return true;
      std::size_t leaving = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Rational& coeff = rows[i][static_cast<std::size_t>(entering)];
        if (coeff <= 0) continue;
        Rational ratio = rhs[i] / coeff;
        if (leaving == rows.size() || ratio < best ||
            (ratio == best && basis[i] < basis[leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (leaving == rows.size()) return false;
      pivot(leaving, entering);
    }
  }
};

// Builds the standard-form tableau and runs phase one. Returns false if the
// system is infeasible.
bool phase_one(const QMatrix& a, const QVector& b, Tableau& t, int& structural) {
  const auto m = static_cast<std::size_t>(a.rows());
  const auto n = static_cast<int>(a.cols());
  int artificial = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (b(static_cast<Eigen::Index>(i)) < 0) ++artificial;
  structural = 2 * n + static_cast<int>(m);
  t.columns = structural + artificial;
  t.rows.assign(m, std::vector<Rational>(static_cast<std::size_t>(t.columns)));
  t.rhs.assign(m, Rational(0));
  t.basis.assign(m, 0);

  int next_art = structural;
  for (std::size_t i = 0; i < m; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const bool flip = b(ii) < 0;
    auto& row = t.rows[i];
    for (int j = 0; j < n; ++j) {
      Rational v = a(ii, j);
      if (flip) v = -v;
      row[static_cast<std::size_t>(j)] = v;
      row[static_cast<std::size_t>(n + j)] = -v;
    }
    row[static_cast<std::size_t>(2 * n) + i] = flip ? -1 : 1;
    t.rhs[i] = flip ? Rational(-b(ii)) : b(ii);
    if (flip) {
      row[static_cast<std::size_t>(next_art)] = 1;
      t.basis[i] = next_art++;
    } else {
      t.basis[i] = 2 * n + static_cast<int>(i);
    }
  }
  if (artificial == 0) return true;

  std::vector<Rational> cost(static_cast<std::size_t>(t.columns), Rational(0));
  for (int j = structural; j < t.columns; ++j) cost[static_cast<std::size_t>(j)] = -1;
  t.set_objective(cost);
  t.run(t.columns);
  if (t.objective_value < 0) return false;

  // Drive remaining (zero-valued) artificials out of the basis.
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < structural) {
      ++i;
      continue;
    }
    int col = -1;
    for (int j = 0; j < structural; ++j)
      if (t.rows[i][static_cast<std::size_t>(j)] != 0) {
        col = j;
        break;
      }
    if (col >= 0) {
      t.pivot(i, col);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  return true;
}

}  // namespace

LpResult maximize(const QMatrix& a, const QVector& b, const QVector& objective) {
  if (a.rows() != b.size() || a.cols() != objective.size())
    throw InputError("linear program dimension mismatch");
  LpResult result;
  Tableau t;
  int structural = 0;
  if (!phase_one(a, b, t, structural)) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  const auto n = static_cast<int>(a.cols());
  std::vector<Rational> cost(static_cast<std::size_t>(t.columns), Rational(0));
  for (int j = 0; j < n; ++j) {
    cost[static_cast<std::size_t>(j)] = objective(j);
    cost[static_cast<std::size_t>(n + j)] = -objective(j);
  }
  t.set_objective(cost);
  if (!t.run(structural)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.value = t.objective_value;
  result.point = zeros(n);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    int col = t.basis[i];
    if (col < n)
      result.point(col) += t.rhs[i];
    else if (col < 2 * n)
      result.point(col - n) -= t.rhs[i];
  }
  return result;
}

bool is_feasible(const QMatrix& a, const QVector& b) {
  if (a.rows() != b.size()) throw InputError("linear program dimension mismatch");
  Tableau t;
  int structural = 0;
  return phase_one(a, b, t, structural);
}

LpResult max_slack(const QMatrix& a, const QVector& b) {
  return max_slack(a, b, std::vector<bool>(static_cast<std::size_t>(a.rows()), true));
}

LpResult max_slack(const QMatrix& a, const QVector& b, const std::vector<bool>& strict) {
  const Eigen::Index n = a.cols();
  QMatrix ext(a.rows() + 2, n + 1);
  QVector rhs(a.rows() + 2);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < n; ++j) ext(i, j) = a(i, j);
    ext(i, n) = strict[static_cast<std::size_t>(i)] ? 1 : 0;
    rhs(i) = b(i);
  }
  for (Eigen::Index j = 0; j <= n; ++j) {
    ext(a.rows(), j) = 0;
    ext(a.rows() + 1, j) = 0;
  }
  ext(a.rows(), n) = 1;  // s <= 1
  rhs(a.rows()) = 1;
  ext(a.rows() + 1, n) = -1;  // s >= -1 keeps the program bounded
  rhs(a.rows() + 1) = 1;
  LpResult r = maximize(ext, rhs, unit_vector(n + 1, n));
  if (r.status == LpStatus::Optimal) r.point.conservativeResize(n);
  return r;
}

}  // namespace curvkit
