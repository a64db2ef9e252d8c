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

#include "curvkit/ncycle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "curvkit/lp.hpp"

namespace curvkit {

namespace {

void check_query(const PolyUnion& a, const NormalQuery& q) {
  if (q.point.size() != a.dimension || q.direction.size() != a.dimension)
    throw InputError("normal query dimension does not match the set");
  if (is_zero(q.direction)) throw InputError("normal direction must be nonzero");
}

Rational l1_norm(const QVector& v) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += abs(v(i));
  return s;
}

// Chebyshev distance from x to a nonempty polytope.
Rational linf_distance(const ConvexPolytope& p, const QVector& x) {
  const int d = p.dimension;
  const int m = static_cast<int>(p.constraints.size());
  QMatrix a = QMatrix::Zero(m + 2 * d, d + 1);
  QVector b(m + 2 * d);
  for (int i = 0; i < m; ++i) {
    a.block(i, 0, 1, d) = p.constraints[static_cast<std::size_t>(i)].normal.transpose();
    b(i) = p.constraints[static_cast<std::size_t>(i)].offset;
  }
  for (int j = 0; j < d; ++j) {
    a(m + 2 * j, j) = 1;
    a(m + 2 * j, d) = -1;
    b(m + 2 * j) = x(j);
    a(m + 2 * j + 1, j) = -1;
    a(m + 2 * j + 1, d) = -1;
    b(m + 2 * j + 1) = -x(j);
  }
  LpResult r = maximize(a, b, -unit_vector(d + 1, d));
  if (r.status != LpStatus::Optimal) throw GeometryError("distance to an empty polytope");
  return -r.value;
}

Halfspace at_least(const QVector& n, const Rational& level) { return Halfspace{QVector(-n), -level}; }

}  // namespace

LocalCones local_cones(const PolyUnion& a, const QVector& x) {
  if (x.size() != a.dimension) throw InputError("point dimension does not match the set");
  LocalCones out;
  std::vector<QMatrix> tight_rows;
  for (const auto& part : a.parts) {
    if (!contains(part, x)) continue;
    QMatrix rows(0, a.dimension);
    for (const auto& h : part.constraints) {
      if (!h.on_boundary(x)) continue;
      rows.conservativeResize(rows.rows() + 1, a.dimension);
      rows.row(rows.rows() - 1) = h.normal.transpose();
    }
    if (rows.rows() == 0) {
      out.interior = true;
      return out;
    }
    tight_rows.push_back(std::move(rows));
  }
  if (tight_rows.empty()) {
    out.outside = true;
    return out;
  }
  if (tight_rows.size() > inclusion_exclusion_cap())
    throw GeometryError("more parts meet at a point than the inclusion-exclusion cap allows");
  const std::size_t k = tight_rows.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    QMatrix rows(0, a.dimension);
    int size = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      ++size;
      const Eigen::Index r0 = rows.rows();
      rows.conservativeResize(r0 + tight_rows[i].rows(), a.dimension);
      rows.bottomRows(tight_rows[i].rows()) = tight_rows[i];
    }
    out.terms.emplace_back(size, cone_generators(rows));
  }
  return out;
}

IndexValue evaluate_index(const LocalCones& cones, const QVector& n) {
  if (cones.outside || cones.interior) return {};
  IndexValue out;
  int upper = 0;  // chi of the cone cut by {n.u >= 1}
  for (const auto& [size, g] : cones.terms) {
    if (has_positive_direction(g, n)) {
      upper += (size % 2 == 1) ? 1 : -1;
    } else if (!g.is_zero_cone()) {
      // sup n.u = 0 over C_S; it is attained away from the apex exactly when
      // C_S has lineality or a ray orthogonal to n.
      bool wall = !g.lineality.empty() ||
                  std::any_of(g.rays.begin(), g.rays.end(), [&](const QVector& r) { return n.dot(r) == 0; });
      if (wall) out.degenerate = true;
    }
  }
  out.value = 1 - upper;
  return out;
}

IndexValue index(const PolyUnion& a, const NormalQuery& q) {
  check_query(a, q);
  return evaluate_index(local_cones(a, q.point), q.direction);
}

int index_bruteforce(const PolyUnion& a, const NormalQuery& q, const Rational& r, const Rational& delta) {
  check_query(a, q);
  if (r <= 0 || delta <= 0) throw InputError("radius and delta must be positive");
  const QVector& x = q.point;
  const QVector& n = q.direction;
  std::vector<Halfspace> extra = make_box(x, r).constraints;
  extra.push_back(at_least(n, n.dot(x) - delta));
  const int lower = euler_with(a, extra);
  extra.back() = at_least(n, n.dot(x) + delta);
  const int upper = euler_with(a, extra);
  return lower - upper;
}

Rational local_radius(const PolyUnion& a, const QVector& x) {
  if (x.size() != a.dimension) throw InputError("point dimension does not match the set");
  std::optional<Rational> best;
  auto offer = [&](const Rational& v) {
    if (!best || v < *best) best = v;
  };
  for (const auto& part : a.parts) {
    if (!feasible(part)) continue;
    if (contains(part, x)) {
      for (const auto& h : part.constraints)
        if (!h.on_boundary(x)) offer((h.offset - h.normal.dot(x)) / l1_norm(h.normal));
    } else {
      offer(linf_distance(part, x));
    }
  }
  return best ? *best / 2 : Rational(1);
}

SliceEvaluator::SliceEvaluator(PolyUnion a) : set_(std::move(a)) {
  std::set<QVector, LexLess> points;
  std::set<QVector, LexLess> differences;
  for_each_nonempty_intersection(set_, {}, [&](const std::vector<int>&, const ConvexPolytope& p) {
    const auto vs = vertices(p);
    points.insert(vs.begin(), vs.end());
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) differences.insert(primitive(QVector(vs[i] - vs[j])));
  });
  candidates_.assign(points.begin(), points.end());
  differences_.assign(differences.begin(), differences.end());
  cones_.reserve(candidates_.size());
  for (const auto& x : candidates_) cones_.push_back(local_cones(set_, x));
}

bool SliceEvaluator::direction_degenerate(const QVector& v) const {
  return std::any_of(differences_.begin(), differences_.end(), [&](const QVector& e) { return v.dot(e) == 0; });
}

SliceReport SliceEvaluator::slice(const QVector& v, const Rational& t) const {
  if (v.size() != set_.dimension) throw InputError("slice direction dimension does not match the set");
  if (is_zero(v)) throw InputError("slice direction must be nonzero");
  SliceReport report{v, t, {}};
  report.degenerate = direction_degenerate(v);
  const QVector n = -v;
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    const Rational height = v.dot(candidates_[i]);
    if (height > t) continue;
    if (height == t) report.degenerate = true;
    IndexValue iv = evaluate_index(cones_[i], n);
    if (iv.degenerate) report.degenerate = true;
    if (iv.value != 0) {
      report.contributions.push_back({candidates_[i], iv.value});
      report.sum += iv.value;
    }
  }
  report.euler = euler_with_halfspace(set_, Halfspace{v, t});
  return report;
}

bool SliceEvaluator::touching(const QVector& v, const Rational& t) const {
  if (v.size() != set_.dimension) throw InputError("direction dimension does not match the set");
  const QVector n = -v;
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    if (v.dot(candidates_[i]) != t) continue;
    IndexValue iv = evaluate_index(cones_[i], n);
    if (iv.value != 0 || iv.degenerate) return true;
  }
  return false;
}

std::pair<QVector, Rational> random_halfspace(const SliceEvaluator& eval, Rng& rng) {
  QVector v = random_direction(rng, eval.set().dimension);
  if (eval.candidates().empty()) return {v, 0};
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& x : eval.candidates()) {
    const double h = to_double(Rational(v.dot(x)));
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  const double pad = 0.1 * std::max(hi - lo, 1.0);
  std::uniform_real_distribution<double> level(lo - pad, hi + pad);
  return {v, rationalize(level(rng))};
}

SliceReport slice_sum(const PolyUnion& a, const QVector& v, const Rational& t) {
  return SliceEvaluator(a).slice(v, t);
}

bool touching_halfspace(const PolyUnion& a, const QVector& v, const Rational& t) {
  if (is_zero(v)) throw InputError("direction must be nonzero");
  return SliceEvaluator(a).touching(v, t);
}

PolyUnion union_intersection(const PolyUnion& a, const PolyUnion& b) {
  if (a.dimension != b.dimension) throw InputError("unions differ in dimension");
  PolyUnion out{a.dimension, {}};
  for (const auto& p : a.parts)
    for (const auto& q : b.parts) {
      ConvexPolytope r = intersect(p, q);
      if (feasible(r)) out.parts.push_back(std::move(r));
    }
  return out;
}

PolyUnion union_union(const PolyUnion& a, const PolyUnion& b) {
  if (a.dimension != b.dimension) throw InputError("unions differ in dimension");
  PolyUnion out = a;
  out.parts.insert(out.parts.end(), b.parts.begin(), b.parts.end());
  return out;
}

AdditivityResult additivity_check(const PolyUnion& a, const PolyUnion& b, const NormalQuery& q) {
  AdditivityResult r;
  r.a = index(a, q);
  r.b = index(b, q);
  r.intersection = index(union_intersection(a, b), q);
  r.united = index(union_union(a, b), q);
  r.holds = r.a.value + r.b.value == r.intersection.value + r.united.value;
  r.degenerate = r.a.degenerate || r.b.degenerate || r.intersection.degenerate || r.united.degenerate;
  return r;
}

}  // namespace curvkit
