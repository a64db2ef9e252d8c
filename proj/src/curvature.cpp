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

#include "curvkit/curvature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "curvkit/cone.hpp"
#include "curvkit/linalg.hpp"
#include "curvkit/random.hpp"

namespace curvkit {

namespace {

// Bound on the rounding error of a closed-form angle computed in extended
// precision and rounded to double.
constexpr double kClosedFormError = 1e-15;

// Generators of N(F) modulo its lineality, plus the tangent cone rays that
// cut the pointed part out of its span.
struct NormalCone {
  std::vector<QVector> pointed;    // projected onto the complement of the lineality
  std::vector<QVector> tangent_rays;
};

QMatrix rows_of(const std::vector<QVector>& vs, Eigen::Index d) {
  QMatrix m(static_cast<Eigen::Index>(vs.size()), d);
  for (std::size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  return m;
}

NormalCone normal_cone(const ConvexPolytope& p, const Face& face) {
  const int d = p.dimension;
  std::vector<QVector> tight;
  for (int c : face.tight) tight.push_back(p.constraints[static_cast<std::size_t>(c)].normal);
  ConeGenerators t = cone_generators(rows_of(tight, d));
  std::vector<QVector> polar_rows = t.rays;
  for (const auto& l : t.lineality) {
    polar_rows.push_back(l);
    polar_rows.push_back(-l);
  }
  ConeGenerators n = cone_generators(rows_of(polar_rows, d));
  NormalCone out;
  out.tangent_rays = t.rays;
  if (n.lineality.empty()) {
    out.pointed = n.rays;
  } else {
    // Orthogonal projection onto the complement of span(lineality).
    QMatrix l = rows_of(n.lineality, d).transpose();
    QMatrix gram = l.transpose() * l;
    for (const auto& r : n.rays) {
      QVector coeff;
      solve(gram, QVector(l.transpose() * r), coeff);
      QVector projected = r - l * coeff;
      if (!is_zero(projected)) out.pointed.push_back(primitive(projected));
    }
  }
  return out;
}

}  // namespace

CurvatureVector CurvatureVector::zero(int dimension) {
  CurvatureVector v;
  v.value = Eigen::VectorXd::Zero(dimension + 1);
  v.error = Eigen::VectorXd::Zero(dimension + 1);
  v.exact.assign(static_cast<std::size_t>(dimension + 1), Rational(0));
  return v;
}

CurvatureVector& CurvatureVector::operator+=(const CurvatureVector& other) {
  value += other.value;
  error += other.error;
  for (std::size_t k = 0; k < exact.size(); ++k)
    exact[k] = (exact[k] && other.exact[k]) ? std::optional<Rational>(*exact[k] + *other.exact[k]) : std::nullopt;
  return *this;
}

CurvatureVector& CurvatureVector::operator-=(const CurvatureVector& other) {
  value -= other.value;
  error += other.error;
  for (std::size_t k = 0; k < exact.size(); ++k)
    exact[k] = (exact[k] && other.exact[k]) ? std::optional<Rational>(*exact[k] - *other.exact[k]) : std::nullopt;
  return *this;
}

double sphere_constant(int m) {
  if (m < 0) throw InputError("sphere dimension must be nonnegative");
  const double h = 0.5 * (m + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double lk_form_eval(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& n,
                    const std::vector<Eigen::VectorXd>& a) {
  const Eigen::Index d = n.size();
  if (x.size() != d) throw InputError("x and n differ in dimension");
  if (k < 0 || k > d - 1) throw InputError("form degree must lie in [0, d-1]");
  if (static_cast<Eigen::Index>(a.size()) != d - 1) throw InputError("expected d-1 tangent vectors");
  for (const auto& v : a)
    if (v.size() != 2 * d) throw InputError("tangent vectors must lie in R^{2d}");
  const int slots = static_cast<int>(d) - 1;
  const int ones = slots - k;
  double sum = 0.0;
  for (unsigned sigma = 0; sigma < (1u << slots); ++sigma) {
    if (std::popcount(sigma) != ones) continue;
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < slots; ++i) {
      const bool normal_part = (sigma >> i) & 1u;
      m.col(i) = a[static_cast<std::size_t>(i)].segment(normal_part ? d : 0, d);
    }
    m.col(d - 1) = n;
    sum += m.determinant();
  }
  return sum / sphere_constant(static_cast<int>(d) - k - 1);
}

ConvexPolytope face_polytope(const ConvexPolytope& p, const FaceLattice& lattice, int face_id) {
  ConvexPolytope out = p;
  for (int c : lattice.faces[static_cast<std::size_t>(face_id)].tight) {
    const auto& h = p.constraints[static_cast<std::size_t>(c)];
    out.constraints.push_back({QVector(-h.normal), -h.offset});
  }
  return out;
}

FaceAngle external_angle(const ConvexPolytope& p, const FaceLattice& lattice, int face_id,
                         const AngleOptions& options) {
  if (face_id < 0 || face_id >= static_cast<int>(lattice.faces.size()))
    throw InputError("face id out of range");
  const Face& face = lattice.faces[static_cast<std::size_t>(face_id)];
  FaceAngle out;
  out.face_id = face_id;
  out.dimension = face.dimension;
  const NormalCone cone = normal_cone(p, face);
  const int d = p.dimension;
  const int dim = cone.pointed.empty() ? 0 : static_cast<int>(rank(rows_of(cone.pointed, d)));

  auto set_exact = [&](const Rational& q) {
    out.exact = q;
    out.angle = to_double(q);
    out.error = 0.0;
  };
  if (dim == 0) {
    set_exact(1);
    return out;
  }
  if (dim == 1) {
    set_exact(Rational(1, 2));
    return out;
  }
  bool orthant = static_cast<int>(cone.pointed.size()) == dim;
  for (std::size_t i = 0; orthant && i < cone.pointed.size(); ++i)
    for (std::size_t j = i + 1; orthant && j < cone.pointed.size(); ++j)
      orthant = cone.pointed[i].dot(cone.pointed[j]) == 0;
  if (orthant) {
    set_exact(Rational(1, Integer(1) << dim));
    return out;
  }

  // Orthonormal basis of the span of the pointed part, in extended precision
  // for the closed forms.
  using Ld = long double;
  using MatrixL = Eigen::Matrix<Ld, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector3L = Eigen::Matrix<Ld, 3, 1>;
  MatrixL gens(d, static_cast<Eigen::Index>(cone.pointed.size()));
  for (std::size_t i = 0; i < cone.pointed.size(); ++i) {
    for (int j = 0; j < d; ++j) gens(j, static_cast<Eigen::Index>(i)) = static_cast<Ld>(to_double(cone.pointed[i](j)));
    gens.col(static_cast<Eigen::Index>(i)).normalize();
  }
  Eigen::HouseholderQR<MatrixL> qr(gens);
  MatrixL basis = qr.householderQ() * MatrixL::Identity(d, dim);
  MatrixL local = basis.transpose() * gens;  // dim x rays, unit columns
  const Ld pi = std::numbers::pi_v<Ld>;

  if (dim == 2) {
    Ld c = std::clamp<Ld>(local.col(0).dot(local.col(1)), -1, 1);
    out.angle = static_cast<double>(std::acos(c) / (2 * pi));
    out.error = kClosedFormError;
    return out;
  }
  if (dim == 3) {
    Vector3L center = local.rowwise().sum().normalized();
    Vector3L e1 = std::abs(center.x()) < 0.9L ? Vector3L::UnitX() : Vector3L::UnitY();
    e1 = (e1 - e1.dot(center) * center).normalized();
    Vector3L e2 = center.cross(e1);
    std::vector<std::pair<Ld, Vector3L>> around;
    for (Eigen::Index i = 0; i < local.cols(); ++i) {
      Vector3L r = local.col(i);
      around.emplace_back(std::atan2(r.dot(e2), r.dot(e1)), r);
    }
    std::sort(around.begin(), around.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Ld area = 0;
    for (std::size_t i = 1; i + 1 < around.size(); ++i) {
      const Vector3L& a = around[0].second;
      const Vector3L& b = around[i].second;
      const Vector3L& c = around[i + 1].second;
      area += 2 * std::atan2(std::abs(a.dot(b.cross(c))), 1 + a.dot(b) + b.dot(c) + c.dot(a));
    }
    out.angle = static_cast<double>(area / (4 * pi));
    out.error = kClosedFormError;
    return out;
  }

  Eigen::MatrixXd basis_d = basis.cast<double>();
  // Gaussian estimate: g in span(basis) lies in N(F) iff g . r <= 0 for
  // every ray r of the tangent cone.
  std::vector<Eigen::VectorXd> tangent;
  for (const auto& r : cone.tangent_rays) tangent.push_back(to_double(r));
  Rng rng = make_rng(options.seed, options.stream, static_cast<std::uint64_t>(face_id));
  std::size_t hits = 0;
  const std::size_t n = std::max<std::size_t>(options.samples, 2);
  for (std::size_t s = 0; s < n; ++s) {
    Eigen::VectorXd g = basis_d * gaussian_vector(rng, dim);
    if (std::all_of(tangent.begin(), tangent.end(), [&](const Eigen::VectorXd& r) { return g.dot(r) <= 0.0; }))
      ++hits;
  }
  const double phat = static_cast<double>(hits) / static_cast<double>(n);
  out.angle = phat;
  out.error = std::sqrt(std::max(phat * (1.0 - phat), 1.0 / static_cast<double>(n)) / static_cast<double>(n));
  out.monte_carlo = true;
  return out;
}

namespace {

template <typename VolumeOf>
CurvatureVector face_sum(const ConvexPolytope& p, const AngleOptions& options, VolumeOf volume_of) {
  CurvatureVector out = CurvatureVector::zero(p.dimension);
  if (!feasible(p)) return out;
  if (!is_bounded(p)) throw GeometryError("curvature of an unbounded polytope");
  const FaceLattice lattice = face_lattice(p);
  for (std::size_t f = 0; f < lattice.faces.size(); ++f) {
    const int id = static_cast<int>(f);
    Measure vol = volume_of(lattice, id);
    if (vol.value == 0.0 && vol.exact) continue;
    FaceAngle angle = external_angle(p, lattice, id, options);
    const auto k = static_cast<std::size_t>(lattice.faces[f].dimension);
    out.value(static_cast<Eigen::Index>(k)) += angle.angle * vol.value;
    if (angle.exact && vol.exact) {
      if (out.exact[k]) *out.exact[k] += *angle.exact * *vol.exact;
    } else {
      out.error(static_cast<Eigen::Index>(k)) += angle.error * vol.value + 4e-16 * angle.angle * vol.value;
      out.exact[k].reset();
    }
  }
  return out;
}

template <typename PerPart>
CurvatureVector inclusion_exclusion(const PolyUnion& a, const AngleOptions& options, PerPart per_part) {
  CurvatureVector out = CurvatureVector::zero(a.dimension);
  std::uint64_t stream = options.stream;
  for_each_nonempty_intersection(a, {}, [&](const std::vector<int>& subset, const ConvexPolytope& p) {
    AngleOptions o = options;
    o.stream = stream++;
    CurvatureVector c = per_part(p, o);
    if (subset.size() % 2 == 1)
      out += c;
    else
      out -= c;
  });
  return out;
}

}  // namespace

CurvatureVector curvature_convex(const ConvexPolytope& p, const AngleOptions& options) {
  if (!feasible(p)) throw GeometryError("curvature of an empty polytope");
  return face_sum(p, options, [](const FaceLattice& l, int id) { return face_volume(l, id); });
}

CurvatureVector curvature_union(const PolyUnion& a, const AngleOptions& options) {
  return inclusion_exclusion(a, options, [](const ConvexPolytope& p, const AngleOptions& o) {
    return face_sum(p, o, [](const FaceLattice& l, int id) { return face_volume(l, id); });
  });
}

CurvatureVector curvature_localized(const ConvexPolytope& p, const ConvexPolytope& window,
                                    const AngleOptions& options) {
  if (window.dimension != p.dimension) throw InputError("window dimension does not match the set");
  return face_sum(p, options, [&](const FaceLattice& l, int id) {
    ConvexPolytope piece = intersect(face_polytope(p, l, id), window);
    if (!feasible(piece)) return Measure{0.0, Rational(0)};
    return hausdorff_measure(piece, l.faces[static_cast<std::size_t>(id)].dimension);
  });
}

CurvatureVector curvature_localized(const PolyUnion& a, const ConvexPolytope& window,
                                    const AngleOptions& options) {
  return inclusion_exclusion(a, options, [&](const ConvexPolytope& p, const AngleOptions& o) {
    return curvature_localized(p, window, o);
  });
}

PolyUnion affine_pushforward(const PolyUnion& a, const QMatrix& m, const QVector& b) {
  const int d = a.dimension;
  if (m.rows() != d || m.cols() != d || b.size() != d) throw InputError("affine map dimension mismatch");
  if (rank(m) < d) throw GeometryError("affine map is singular");
  const QMatrix mt = m.transpose();
  PolyUnion out{d, {}};
  for (const auto& part : a.parts) {
    ConvexPolytope q{d, {}};
    for (const auto& h : part.constraints) {
      // a.x <= c with x = M^{-1}(y - b) becomes (M^{-T} a).y <= c + (M^{-T} a).b
      QVector n;
      solve(mt, h.normal, n);
      q.constraints.push_back({n, h.offset + n.dot(b)});
    }
    out.parts.push_back(std::move(q));
  }
  return out;
}

}  // namespace curvkit
