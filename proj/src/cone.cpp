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

#include "curvkit/cone.hpp"

#include <algorithm>

namespace curvkit {
namespace {

QVector canonical(const QVector& v) { return primitive(v); }

bool same(const QVector& a, const QVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

}  // namespace

ConeGenerators cone_generators(const QMatrix& rows) {
  const Eigen::Index n = rows.cols();
  ConeGenerators cone;
  for (Eigen::Index i = 0; i < n; ++i) cone.lineality.push_back(unit_vector(n, i));

  // zero[r][c]: ray r is tight on processed constraint c.
  std::vector<std::vector<bool>> zero;

  for (Eigen::Index c = 0; c < rows.rows(); ++c) {
    QVector h = rows.row(c).transpose();
    if (is_zero(h)) {
      for (auto& z : zero) z.push_back(true);
      continue;
    }

    // Case 1: the constraint cuts the lineality space.
    auto lin = std::find_if(cone.lineality.begin(), cone.lineality.end(),
                            [&](const QVector& l) { return h.dot(l) != 0; });
    if (lin != cone.lineality.end()) {
      QVector l0 = *lin;
      cone.lineality.erase(lin);
      Rational hl0 = h.dot(l0);
      if (hl0 > 0) {
        l0 = -l0;
        hl0 = -hl0;
      }
      for (auto& l : cone.lineality) {
        Rational hl = h.dot(l);
        if (hl != 0) l = canonical(QVector(l - (hl / hl0) * l0));
      }
      for (auto& r : cone.rays) {
        Rational hr = h.dot(r);
        if (hr != 0) r = canonical(QVector(r - (hr / hl0) * l0));
      }
      for (auto& z : zero) z.push_back(true);
      cone.rays.push_back(canonical(l0));
      // l0 was in the old lineality, so it is tight on every earlier row.
      zero.emplace_back(static_cast<std::size_t>(c), true);
      zero.back().push_back(false);
      continue;
    }

    // Case 2: ordinary double-description step on the pointed part.
    std::vector<Rational> value(cone.rays.size());
    std::vector<std::size_t> pos, neg, nul;
    for (std::size_t i = 0; i < cone.rays.size(); ++i) {
      value[i] = h.dot(cone.rays[i]);
      if (value[i] > 0)
        pos.push_back(i);
      else if (value[i] < 0)
        neg.push_back(i);
      else
        nul.push_back(i);
    }
    if (pos.empty()) {
      for (std::size_t i = 0; i < cone.rays.size(); ++i) zero[i].push_back(value[i] == 0);
      continue;
    }

    std::vector<QVector> new_rays;
    std::vector<std::vector<bool>> new_zero;
    for (std::size_t i : neg) {
      new_rays.push_back(cone.rays[i]);
      new_zero.push_back(zero[i]);
      new_zero.back().push_back(false);
    }
    for (std::size_t i : nul) {
      new_rays.push_back(cone.rays[i]);
      new_zero.push_back(zero[i]);
      new_zero.back().push_back(true);
    }
    const std::size_t processed = static_cast<std::size_t>(c);
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        // Combinatorial adjacency test.
        std::vector<std::size_t> common;
        for (std::size_t k = 0; k < processed; ++k)
          if (zero[p][k] && zero[q][k]) common.push_back(k);
        bool adjacent = true;
        for (std::size_t r = 0; r < cone.rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool contains = std::all_of(common.begin(), common.end(),
                                      [&](std::size_t k) { return zero[r][k]; });
          if (contains) adjacent = false;
        }
        if (!adjacent) continue;
        QVector combo = canonical(QVector(value[p] * cone.rays[q] - value[q] * cone.rays[p]));
        std::vector<bool> z(processed + 1, false);
        for (std::size_t k : common) z[k] = true;
        z[processed] = true;
        new_rays.push_back(std::move(combo));
        new_zero.push_back(std::move(z));
      }
    }
    cone.rays = std::move(new_rays);
    zero = std::move(new_zero);
  }

  for (auto& l : cone.lineality) l = canonical(l);
  // Drop duplicate rays.
  std::vector<QVector> unique;
  for (auto& r : cone.rays)
    if (std::none_of(unique.begin(), unique.end(), [&](const QVector& u) { return same(u, r); }))
      unique.push_back(r);
  cone.rays = std::move(unique);
  return cone;
}

bool has_positive_direction(const ConeGenerators& cone, const QVector& direction) {
  for (const auto& l : cone.lineality)
    if (direction.dot(l) != 0) return true;
  for (const auto& r : cone.rays)
    if (direction.dot(r) > 0) return true;
  return false;
}

}  // namespace curvkit
