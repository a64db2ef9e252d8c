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

#include "curvkit/polyhedra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "curvkit/cone.hpp"
#include "curvkit/linalg.hpp"
#include "curvkit/lp.hpp"

namespace curvkit {

Halfspace make_halfspace(QVector normal, Rational offset) {
  if (is_zero(normal)) throw InputError("halfspace normal must be nonzero");
  return Halfspace{std::move(normal), std::move(offset)};
}

ConvexPolytope make_box(const QVector& lo, const QVector& hi) {
  if (lo.size() != hi.size()) throw InputError("box corner dimension mismatch");
  const auto d = static_cast<int>(lo.size());
  ConvexPolytope p{d, {}};
  for (int i = 0; i < d; ++i) {
    p.constraints.push_back({unit_vector(d, i), hi(i)});
    p.constraints.push_back({QVector(-unit_vector(d, i)), Rational(-lo(i))});
  }
  return p;
}

ConvexPolytope make_box(const QVector& center, const Rational& radius) {
  QVector r(center.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = radius;
  return make_box(QVector(center - r), QVector(center + r));
}

ConvexPolytope make_simplex(const std::vector<QVector>& points) {
  if (points.empty()) throw InputError("simplex needs points");
  const auto d = static_cast<int>(points.front().size());
  if (static_cast<int>(points.size()) != d + 1 || affine_dimension(points) != d)
    throw InputError("simplex needs d+1 affinely independent points");
  ConvexPolytope p{d, {}};
  for (int skip = 0; skip <= d; ++skip) {
    std::vector<QVector> facet;
    for (int i = 0; i <= d; ++i)
      if (i != skip) facet.push_back(points[static_cast<std::size_t>(i)]);
    QMatrix diffs(d - 1 >= 0 ? d - 1 : 0, d);
    for (int i = 1; i < d; ++i)
      diffs.row(i - 1) = (facet[static_cast<std::size_t>(i)] - facet.front()).transpose();
    QVector normal;
    if (d == 1) {
      normal = unit_vector(1, 0);
    } else {
      normal = nullspace(diffs).col(0);
    }
    Rational offset = normal.dot(facet.front());
    if (normal.dot(points[static_cast<std::size_t>(skip)]) > offset) {
      normal = -normal;
      offset = -offset;
    }
    normal = primitive(normal);
    p.constraints.push_back({normal, normal.dot(facet.front())});
  }
  return p;
}

QMatrix constraint_matrix(const ConvexPolytope& p) {
  QMatrix a(static_cast<Eigen::Index>(p.constraints.size()), p.dimension);
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    a.row(static_cast<Eigen::Index>(i)) = p.constraints[i].normal.transpose();
  return a;
}

QVector constraint_offsets(const ConvexPolytope& p) {
  QVector b(static_cast<Eigen::Index>(p.constraints.size()));
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    b(static_cast<Eigen::Index>(i)) = p.constraints[i].offset;
  return b;
}

bool feasible(const ConvexPolytope& p) {
  for (const auto& h : p.constraints)
    if (h.normal.size() != p.dimension) throw InputError("constraint dimension mismatch");
  if (p.constraints.empty()) return true;
  return is_feasible(constraint_matrix(p), constraint_offsets(p));
}

bool is_bounded(const ConvexPolytope& p) {
  if (p.constraints.empty()) return p.dimension == 0;
  return cone_generators(constraint_matrix(p)).is_zero_cone();
}

bool contains(const ConvexPolytope& p, const QVector& x) {
  return std::all_of(p.constraints.begin(), p.constraints.end(),
                     [&](const Halfspace& h) { return h.contains(x); });
}

bool contains(const PolyUnion& u, const QVector& x) {
  return std::any_of(u.parts.begin(), u.parts.end(),
                     [&](const ConvexPolytope& p) { return contains(p, x); });
}

ConvexPolytope intersect(const ConvexPolytope& a, const ConvexPolytope& b) {
  if (a.dimension != b.dimension) throw InputError("intersecting polytopes of different dimension");
  ConvexPolytope out = a;
  out.constraints.insert(out.constraints.end(), b.constraints.begin(), b.constraints.end());
  return out;
}

ConvexPolytope intersect(const ConvexPolytope& a, std::span<const Halfspace> extra) {
  ConvexPolytope out = a;
  for (const auto& h : extra) {
    if (h.normal.size() != a.dimension) throw InputError("halfspace dimension mismatch");
    out.constraints.push_back(h);
  }
  return out;
}

PolyUnion make_union(int dimension, std::vector<ConvexPolytope> parts) {
  for (const auto& p : parts) {
    if (p.dimension != dimension) throw InputError("part dimension differs from union dimension");
    for (const auto& h : p.constraints) {
      if (h.normal.size() != dimension) throw InputError("constraint dimension mismatch");
      if (is_zero(h.normal)) throw InputError("halfspace normal must be nonzero");
    }
    if (feasible(p) && !is_bounded(p)) throw GeometryError("union part is unbounded");
  }
  return PolyUnion{dimension, std::move(parts)};
}

std::vector<QVector> vertices(const ConvexPolytope& p) {
  const int d = p.dimension;
  QMatrix rows(static_cast<Eigen::Index>(p.constraints.size()) + 1, d + 1);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    rows.row(r).head(d) = p.constraints[i].normal.transpose();
    rows(r, d) = -p.constraints[i].offset;
  }
  const auto last = static_cast<Eigen::Index>(p.constraints.size());
  for (int j = 0; j < d; ++j) rows(last, j) = 0;
  rows(last, d) = -1;

  ConeGenerators g = cone_generators(rows);
  bool recession = !g.lineality.empty();
  std::vector<QVector> out;
  for (const auto& r : g.rays) {
    if (r(d) > 0)
      out.push_back(QVector(r.head(d) / r(d)));
    else
      recession = true;
  }
  if (out.empty()) throw GeometryError("polytope is empty");
  if (recession) throw GeometryError("polytope is unbounded");
  return out;
}

std::size_t inclusion_exclusion_cap() {
  if (const char* env = std::getenv("CURVKIT_IE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 8;
}

namespace {

void visit_from(const PolyUnion& u, std::vector<int>& chosen, const ConvexPolytope& current,
                int next,
                const std::function<void(const std::vector<int>&, const ConvexPolytope&)>& visit) {
  for (int j = next; j < static_cast<int>(u.parts.size()); ++j) {
    ConvexPolytope candidate = intersect(current, u.parts[static_cast<std::size_t>(j)]);
    if (!feasible(candidate)) continue;
    chosen.push_back(j);
    visit(chosen, candidate);
    visit_from(u, chosen, candidate, j + 1, visit);
    chosen.pop_back();
  }
}

}  // namespace

void for_each_nonempty_intersection(
    const PolyUnion& u, std::span<const Halfspace> extra,
    const std::function<void(const std::vector<int>&, const ConvexPolytope&)>& visit) {
  if (u.parts.size() > inclusion_exclusion_cap())
    throw GeometryError("union has " + std::to_string(u.parts.size()) +
                        " parts, above the inclusion-exclusion cap of " +
                        std::to_string(inclusion_exclusion_cap()));
  ConvexPolytope seed{u.dimension, {}};
  seed = intersect(seed, extra);
  std::vector<int> chosen;
  visit_from(u, chosen, seed, 0, visit);
}

int euler_with(const PolyUnion& u, std::span<const Halfspace> extra) {
  int chi = 0;
  for_each_nonempty_intersection(u, extra, [&](const std::vector<int>& s, const ConvexPolytope&) {
    chi += (s.size() % 2 == 1) ? 1 : -1;
  });
  return chi;
}

int euler(const PolyUnion& u) { return euler_with(u, {}); }

int euler_with_halfspace(const PolyUnion& u, const Halfspace& h) {
  return euler_with(u, std::span<const Halfspace>(&h, 1));
}

PolyCone tangent_cone(const PolyUnion& u, const QVector& x) {
  if (x.size() != u.dimension) throw InputError("point dimension mismatch");
  PolyCone cone{x, {}};
  for (const auto& p : u.parts) {
    if (!contains(p, x)) continue;
    std::vector<Halfspace> active;
    for (const auto& h : p.constraints)
      if (h.on_boundary(x)) active.push_back({h.normal, Rational(0)});
    cone.parts.push_back(std::move(active));
  }
  if (cone.parts.empty()) throw GeometryError("tangent cone requested at a point outside the set");
  return cone;
}

// Face lattice ------------------------------------------------------------

std::vector<int> FaceLattice::faces_of_dimension(int k) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].dimension == k) out.push_back(static_cast<int>(i));
  return out;
}

FaceLattice face_lattice(const ConvexPolytope& p) {
  FaceLattice lattice;
  lattice.vertices = vertices(p);
  const std::size_t nv = lattice.vertices.size();
  const std::size_t nc = p.constraints.size();
  std::vector<std::vector<bool>> tight(nv, std::vector<bool>(nc, false));
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t c = 0; c < nc; ++c)
      tight[v][c] = p.constraints[c].on_boundary(lattice.vertices[v]);

  auto tight_on_all = [&](const std::vector<int>& ids) {
    std::vector<int> out;
    for (std::size_t c = 0; c < nc; ++c)
      if (std::all_of(ids.begin(), ids.end(),
                      [&](int v) { return tight[static_cast<std::size_t>(v)][c]; }))
        out.push_back(static_cast<int>(c));
    return out;
  };
  auto dimension_of = [&](const std::vector<int>& ids) {
    std::vector<QVector> pts;
    for (int v : ids) pts.push_back(lattice.vertices[static_cast<std::size_t>(v)]);
    return affine_dimension(pts);
  };

  Face top;
  for (std::size_t v = 0; v < nv; ++v) top.vertex_ids.push_back(static_cast<int>(v));
  top.dimension = dimension_of(top.vertex_ids);
  top.tight = tight_on_all(top.vertex_ids);
  lattice.faces.push_back(top);

  // vertex set -> (dimension, face id or -1)
  std::map<std::vector<int>, std::pair<int, int>> seen;
  seen[top.vertex_ids] = {top.dimension, 0};

  for (std::size_t fi = 0; fi < lattice.faces.size(); ++fi) {
    const int j = lattice.faces[fi].dimension;
    if (j == 0) continue;
    const std::vector<int> face_vertices = lattice.faces[fi].vertex_ids;
    const std::vector<int> face_tight = lattice.faces[fi].tight;
    std::vector<int> facets;
    for (std::size_t c = 0; c < nc; ++c) {
      if (std::binary_search(face_tight.begin(), face_tight.end(), static_cast<int>(c))) continue;
      std::vector<int> sub;
      for (int v : face_vertices)
        if (tight[static_cast<std::size_t>(v)][c]) sub.push_back(v);
      if (static_cast<int>(sub.size()) < j) continue;
      auto it = seen.find(sub);
      if (it == seen.end()) it = seen.emplace(sub, std::make_pair(dimension_of(sub), -1)).first;
      // A vertex set first met below facet level gets its face created once
      // some face of one dimension higher reaches it.
      if (it->second.first == j - 1 && it->second.second < 0) {
        Face f;
        f.dimension = j - 1;
        f.vertex_ids = sub;
        f.tight = tight_on_all(sub);
        it->second.second = static_cast<int>(lattice.faces.size());
        lattice.faces.push_back(std::move(f));
      }
      if (it->second.first == j - 1 &&
          std::find(facets.begin(), facets.end(), it->second.second) == facets.end())
        facets.push_back(it->second.second);
    }
    lattice.faces[fi].facets = std::move(facets);
  }
  return lattice;
}

namespace {

using Simplex = std::vector<int>;

const std::vector<Simplex>& triangulate(const FaceLattice& lattice, int face_id,
                                        std::map<int, std::vector<Simplex>>& memo) {
  if (auto it = memo.find(face_id); it != memo.end()) return it->second;
  const Face& f = lattice.faces[static_cast<std::size_t>(face_id)];
  std::vector<Simplex> out;
  if (f.dimension == 0) {
    out.push_back({f.vertex_ids.front()});
  } else {
    const int apex = f.vertex_ids.front();
    for (int facet : f.facets) {
      const Face& g = lattice.faces[static_cast<std::size_t>(facet)];
      if (std::binary_search(g.vertex_ids.begin(), g.vertex_ids.end(), apex)) continue;
      for (Simplex s : triangulate(lattice, facet, memo)) {
        s.push_back(apex);
        out.push_back(std::move(s));
      }
    }
  }
  return memo.emplace(face_id, std::move(out)).first->second;
}

QMatrix edge_matrix(const FaceLattice& lattice, const Simplex& s) {
  const QVector& base = lattice.vertices[static_cast<std::size_t>(s.front())];
  QMatrix e(base.size(), static_cast<Eigen::Index>(s.size()) - 1);
  for (std::size_t i = 1; i < s.size(); ++i)
    e.col(static_cast<Eigen::Index>(i - 1)) = lattice.vertices[static_cast<std::size_t>(s[i])] - base;
  return e;
}

QMatrix select_rows(const QMatrix& m, const std::vector<Eigen::Index>& rows) {
  QMatrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
  return out;
}

}  // namespace

Measure face_volume(const FaceLattice& lattice, int face_id) {
  const Face& f = lattice.faces[static_cast<std::size_t>(face_id)];
  const int k = f.dimension;
  if (k == 0) return {1.0, Rational(1)};

  std::map<int, std::vector<Simplex>> memo;
  const auto& simplices = triangulate(lattice, face_id, memo);
  QMatrix basis = edge_matrix(lattice, simplices.front());
  std::vector<Eigen::Index> rows = row_reduce(QMatrix(basis.transpose())).pivots;
  Rational base_det = abs(determinant(select_rows(basis, rows)));

  Rational sum = 0;
  for (const auto& s : simplices) sum += abs(determinant(select_rows(edge_matrix(lattice, s), rows)));
  Rational factorial = 1;
  for (int i = 2; i <= k; ++i) factorial *= i;
  Rational scaled = sum / (factorial * base_det);

  // vol = scaled * sqrt(det(B^T B))
  Rational gram = determinant(QMatrix(basis.transpose() * basis));
  Measure m;
  Rational root;
  if (rational_sqrt(gram, root)) {
    m.exact = scaled * root;
    m.value = to_double(*m.exact);
  } else {
    m.value = to_double(scaled) * std::sqrt(to_double(gram));
  }
  return m;
}

Measure hausdorff_measure(const ConvexPolytope& p, int k) {
  if (!feasible(p)) return {0.0, Rational(0)};
  FaceLattice lattice = face_lattice(p);
  const int dim = lattice.faces.front().dimension;
  if (dim < k) return {0.0, Rational(0)};
  if (dim > k) throw GeometryError("Hausdorff measure below the polytope dimension is infinite");
  return face_volume(lattice, 0);
}

}  // namespace curvkit
