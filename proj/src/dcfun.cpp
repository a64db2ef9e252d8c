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

#include "curvkit/dcfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>

#include "curvkit/cone.hpp"
#include "curvkit/linalg.hpp"
#include "curvkit/lp.hpp"

namespace curvkit {

namespace {

void check_dimension(int d, const QVector& x) {
  if (x.size() != d)
    throw InputError("point of dimension " + std::to_string(x.size()) + " given to a function on R^" +
                     std::to_string(d));
}

std::vector<int> active_pieces(const MaxAffine& f, const QVector& x) {
  std::vector<Rational> values;
  values.reserve(f.pieces.size());
  for (const auto& p : f.pieces) values.push_back(p(x));
  const Rational best = *std::max_element(values.begin(), values.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == best) out.push_back(static_cast<int>(i));
  return out;
}

void push_row(QMatrix& a, QVector& b, std::vector<bool>& strict, const QVector& row, const Rational& rhs,
              bool is_strict) {
  const Eigen::Index r = a.rows();
  a.conservativeResize(r + 1, row.size());
  b.conservativeResize(r + 1);
  a.row(r) = row.transpose();
  b(r) = rhs;
  strict.push_back(is_strict);
}

// Rows describing {x : exactly the pieces in `active` attain the maximum},
// with the non-active comparisons strict.
void append_cell_rows(const MaxAffine& f, const std::vector<int>& active, bool strict_others, QMatrix& a,
                      QVector& b, std::vector<bool>& strict) {
  const auto& lead = f.pieces[static_cast<std::size_t>(active.front())];
  std::vector<bool> in(f.pieces.size(), false);
  for (int i : active) in[static_cast<std::size_t>(i)] = true;
  for (std::size_t k = 0; k < f.pieces.size(); ++k) {
    if (static_cast<int>(k) == active.front()) continue;
    const auto& p = f.pieces[k];
    QVector row = p.gradient - lead.gradient;
    Rational rhs = lead.offset - p.offset;
    push_row(a, b, strict, row, rhs, !in[k] && strict_others);
    if (in[k]) push_row(a, b, strict, -row, -rhs, false);
  }
}

// Every nonempty index set I for which some x has all of I maximal.
std::vector<std::vector<int>> maximal_sets(const MaxAffine& f) {
  const int d = f.dimension;
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int)> grow = [&](int start) {
    for (int i = start; i < static_cast<int>(f.pieces.size()); ++i) {
      current.push_back(i);
      QMatrix a(0, d);
      QVector b(0);
      std::vector<bool> strict;
      append_cell_rows(f, current, false, a, b, strict);
      if (a.rows() == 0 || is_feasible(a, b)) {
        out.push_back(current);
        if (out.size() > arrangement_cell_cap())
          throw GeometryError("piece arrangement exceeds the cell cap");
        grow(i + 1);
      }
      current.pop_back();
    }
  };
  grow(0);
  return out;
}

void unique_push(std::vector<QVector>& list, const QVector& v) {
  if (std::none_of(list.begin(), list.end(), [&](const QVector& w) { return w == v; })) list.push_back(v);
}

}  // namespace

MaxAffine make_max_affine(int dimension, std::vector<AffinePiece> pieces) {
  if (dimension < 1) throw InputError("dimension must be positive");
  if (pieces.empty()) throw InputError("a max-affine function needs at least one piece");
  for (const auto& p : pieces)
    if (p.gradient.size() != dimension) throw InputError("piece gradient has the wrong dimension");
  return MaxAffine{dimension, std::move(pieces)};
}

MaxAffine constant_function(int dimension, const Rational& value) {
  return make_max_affine(dimension, {AffinePiece{zeros(dimension), value}});
}

DCFunction make_dc(MaxAffine plus, MaxAffine minus) {
  if (plus.dimension != minus.dimension) throw InputError("d.c. components differ in dimension");
  if (plus.pieces.empty() || minus.pieces.empty()) throw InputError("empty max-affine component");
  return DCFunction{std::move(plus), std::move(minus)};
}

DCFunction make_dc(MaxAffine plus) {
  const int d = plus.dimension;
  return make_dc(std::move(plus), constant_function(d));
}

MaxAffine canonical(const MaxAffine& f) {
  MaxAffine out{f.dimension, {}};
  for (const auto& p : f.pieces) {
    auto same = std::find_if(out.pieces.begin(), out.pieces.end(),
                             [&](const AffinePiece& q) { return q.gradient == p.gradient; });
    if (same == out.pieces.end())
      out.pieces.push_back(p);
    else if (p.offset > same->offset)
      same->offset = p.offset;
  }
  return out;
}

DCFunctionT<double> to_double(const DCFunction& f) {
  auto convert = [](const MaxAffine& m) {
    MaxAffineT<double> out{m.dimension, {}};
    for (const auto& p : m.pieces) out.pieces.push_back({to_double(p.gradient), to_double(p.offset)});
    return out;
  };
  return {convert(f.plus), convert(f.minus)};
}

Rational eval(const DCFunction& f, const QVector& x) {
  check_dimension(f.dimension(), x);
  return f(x);
}

SubdifferentialHull clarke_subdifferential(const DCFunction& f_in, const QVector& x) {
  check_dimension(f_in.dimension(), x);
  const DCFunction f{canonical(f_in.plus), canonical(f_in.minus)};
  const int d = f.dimension();
  const auto ig = active_pieces(f.plus, x);
  const auto ih = active_pieces(f.minus, x);
  SubdifferentialHull hull;
  for (int i : ig) {
    for (int j : ih) {
      // Directions u along which pieces i and j stay maximal; the pair
      // contributes a gradient iff this cone has interior.
      QMatrix a(0, d);
      QVector b(0);
      std::vector<bool> strict;
      const auto& gi = f.plus.pieces[static_cast<std::size_t>(i)];
      const auto& hj = f.minus.pieces[static_cast<std::size_t>(j)];
      for (int k : ig)
        if (k != i) push_row(a, b, strict, f.plus.pieces[static_cast<std::size_t>(k)].gradient - gi.gradient, 0, true);
      for (int l : ih)
        if (l != j) push_row(a, b, strict, f.minus.pieces[static_cast<std::size_t>(l)].gradient - hj.gradient, 0, true);
      if (a.rows() > 0 && max_slack(a, b, strict).value <= 0) continue;
      unique_push(hull.generators, QVector(gi.gradient - hj.gradient));
    }
  }
  return hull;
}

QVector min_norm_point(const std::vector<QVector>& points) {
  if (points.empty()) throw InputError("convex hull of no points");
  const Eigen::Index d = points.front().size();
  const int n = static_cast<int>(points.size());
  const int max_size = std::min<int>(n, static_cast<int>(d) + 1);
  QVector best;
  Rational best_norm = -1;
  std::vector<int> subset;
  // The nearest point lies in the relative interior of a face spanned by an
  // affinely independent subset; try every such subset.
  std::function<void(int)> rec = [&](int start) {
    if (!subset.empty()) {
      const int k = static_cast<int>(subset.size());
      QMatrix m(k, k);
      QVector rhs = zeros(k);
      const QVector& p0 = points[static_cast<std::size_t>(subset[0])];
      for (int c = 0; c < k; ++c) m(0, c) = 1;
      rhs(0) = 1;
      for (int r = 1; r < k; ++r) {
        QVector e = points[static_cast<std::size_t>(subset[static_cast<std::size_t>(r)])] - p0;
        for (int c = 0; c < k; ++c) m(r, c) = e.dot(points[static_cast<std::size_t>(subset[static_cast<std::size_t>(c)])]);
      }
      if (rank(m) == k) {
        QVector lambda;
        solve(m, rhs, lambda);
        if ((lambda.array() >= Rational(0)).all()) {
          QVector p = zeros(d);
          for (int c = 0; c < k; ++c) p += lambda(c) * points[static_cast<std::size_t>(subset[static_cast<std::size_t>(c)])];
          Rational norm = p.squaredNorm();
          if (best_norm < 0 || norm < best_norm) {
            best_norm = norm;
            best = p;
          }
        }
      } else {
        return;
      }
    }
    if (static_cast<int>(subset.size()) == max_size) return;
    for (int i = start; i < n; ++i) {
      subset.push_back(i);
      rec(i + 1);
      subset.pop_back();
    }
  };
  rec(0);
  return best;
}

std::size_t arrangement_cell_cap() {
  if (const char* env = std::getenv("CURVKIT_CELL_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 65536;
}

RegularityCertificate is_weakly_regular(const DCFunction& f_in, const Rational& c, const Rational& epsilon) {
  if (epsilon <= 0) throw InputError("epsilon must be positive");
  const DCFunction f{canonical(f_in.plus), canonical(f_in.minus)};
  const int d = f.dimension();
  RegularityCertificate cert{c, epsilon, std::nullopt};
  const auto plus_sets = maximal_sets(f.plus);
  const auto minus_sets = maximal_sets(f.minus);
  if (plus_sets.size() * minus_sets.size() > arrangement_cell_cap())
    throw GeometryError("piece arrangement exceeds the cell cap");
  const Rational eps2 = epsilon * epsilon;
  for (const auto& ip : plus_sets) {
    for (const auto& im : minus_sets) {
      QMatrix a(0, d);
      QVector b(0);
      std::vector<bool> strict;
      append_cell_rows(f.plus, ip, true, a, b, strict);
      append_cell_rows(f.minus, im, true, a, b, strict);
      const auto& g = f.plus.pieces[static_cast<std::size_t>(ip.front())];
      const auto& h = f.minus.pieces[static_cast<std::size_t>(im.front())];
      QVector grad = g.gradient - h.gradient;
      Rational off = g.offset - h.offset;
      push_row(a, b, strict, -grad, off - c, true);            // f > c
      push_row(a, b, strict, grad, c + epsilon - off, true);   // f < c + eps
      LpResult r = max_slack(a, b, strict);
      ++cert.cells_checked;
      if (r.status != LpStatus::Optimal || r.value <= 0) continue;
      SubdifferentialHull hull = clarke_subdifferential(f, r.point);
      QVector p = min_norm_point(hull.generators);
      Rational norm2 = p.squaredNorm();
      cert.min_distance = std::min(cert.min_distance, std::sqrt(to_double(norm2)));
      if (norm2 < eps2 && !cert.witness) cert.witness = r.point;
    }
  }
  return cert;
}

DCFunction aura_from_sublevel(const DCFunction& f, const Rational& c) {
  MaxAffine plus{f.dimension(), {}};
  for (const auto& p : f.plus.pieces) plus.pieces.push_back({p.gradient, p.offset - c});
  for (const auto& p : f.minus.pieces) plus.pieces.push_back(p);
  return make_dc(canonical(plus), f.minus);
}

DCFunction polytope_aura(const ConvexPolytope& p) {
  if (!feasible(p)) throw GeometryError("aura of an empty polytope");
  if (!is_bounded(p)) throw GeometryError("aura of an unbounded polytope");
  MaxAffine g = constant_function(p.dimension);
  for (const auto& h : p.constraints) {
    Rational norm2 = h.normal.squaredNorm();
    Rational root;
    Rational scale = rational_sqrt(norm2, root) ? Rational(1) / root
                                                : rationalize(1.0 / std::sqrt(to_double(norm2)));
    g.pieces.push_back({QVector(h.normal * scale), -h.offset * scale});
  }
  return make_dc(canonical(g));
}

DCFunction halfspace_aura(const QVector& v, const Rational& t) {
  if (v.size() == 0 || is_zero(v)) throw InputError("halfspace aura needs a nonzero direction");
  const int d = static_cast<int>(v.size());
  return make_dc(make_max_affine(d, {AffinePiece{v, -t}, AffinePiece{zeros(d), 0}}));
}

DCFunction combine_auras(const DCFunction& f, const DCFunction& g) {
  if (f.dimension() != g.dimension()) throw InputError("auras differ in dimension");
  auto sum = [](const MaxAffine& a, const MaxAffine& b) {
    MaxAffine out{a.dimension, {}};
    for (const auto& p : a.pieces)
      for (const auto& q : b.pieces) out.pieces.push_back({QVector(p.gradient + q.gradient), p.offset + q.offset});
    return canonical(out);
  };
  return make_dc(sum(f.plus, g.plus), sum(f.minus, g.minus));
}

bool touches(const ConvexPolytope& p, const ConvexPolytope& q) {
  if (p.dimension != q.dimension) throw InputError("polytopes differ in dimension");
  if (!feasible(intersect(p, q))) return false;
  const auto vp = vertices(p);
  const auto vq = vertices(q);
  QMatrix rows(static_cast<Eigen::Index>(vp.size() * vq.size()), p.dimension);
  Eigen::Index r = 0;
  for (const auto& x : vp)
    for (const auto& y : vq) rows.row(r++) = (x - y).transpose();
  return !cone_generators(rows).is_zero_cone();
}

bool touches(const PolyUnion& a, const PolyUnion& b) {
  if (a.dimension != b.dimension) throw InputError("unions differ in dimension");
  for (const auto& p : a.parts) {
    if (!feasible(p)) continue;
    for (const auto& q : b.parts) {
      if (!feasible(q)) continue;
      if (touches(p, q)) return true;
    }
  }
  return false;
}

}  // namespace curvkit
