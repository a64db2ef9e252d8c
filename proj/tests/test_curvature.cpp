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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curvkit/curvature.hpp"
#include "curvkit/dcfun.hpp"
#include "curvkit/ncycle.hpp"
#include "support/corpus.hpp"
#include "support/shapes.hpp"

namespace curvkit {
namespace {

using testing::box;
using testing::qv;
constexpr double kPi = std::numbers::pi;

void expect_exact(const CurvatureVector& c, std::vector<Rational> expected) {
  ASSERT_EQ(c.value.size(), static_cast<Eigen::Index>(expected.size()));
  for (std::size_t k = 0; k < expected.size(); ++k) {
    ASSERT_TRUE(c.exact[k].has_value()) << "C_" << k;
    EXPECT_EQ(*c.exact[k], expected[k]) << "C_" << k;
    EXPECT_DOUBLE_EQ(c.value(static_cast<Eigen::Index>(k)), to_double(expected[k]));
  }
}

TEST(SphereConstant, LowDimensions) {
  EXPECT_NEAR(sphere_constant(0), 2.0, 1e-15);
  EXPECT_NEAR(sphere_constant(1), 2 * kPi, 1e-14);
  EXPECT_NEAR(sphere_constant(2), 4 * kPi, 1e-14);
  EXPECT_NEAR(sphere_constant(3), 2 * kPi * kPi, 1e-13);
}

TEST(LkForm, Examples) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd n(2);
  n << 0, 1;
  Eigen::VectorXd a(4);
  a << 1, 0, 0, 0;
  EXPECT_NEAR(lk_form_eval(1, x, n, {a}), 0.5, 1e-15);
  a << 0, 0, 1, 0;
  EXPECT_NEAR(lk_form_eval(0, x, n, {a}), 1 / (2 * kPi), 1e-15);
  // A tangent vector parallel to n in the normal slot is annihilated.
  a << 0, 0, 0, 1;
  EXPECT_EQ(lk_form_eval(0, x, n, {a}), 0.0);
  Eigen::VectorXd n3(3), b(6);
  n3 << 0, 0, 1;
  b << 0, 0, 0, 1, 0, 0;
  EXPECT_EQ(lk_form_eval(0, Eigen::VectorXd::Zero(3), n3, {b, b}), 0.0);
  EXPECT_THROW(lk_form_eval(2, x, n, {a}), InputError);
}

// Integrates phi_0 and phi_1 over the normal bundle of a convex polygon given
// in clockwise order: edges carry (x(s), n fixed), vertices (x fixed, n(theta)).
std::pair<double, double> normal_bundle_integrals(const std::vector<Eigen::Vector2d>& poly, int steps) {
  const std::size_t m = poly.size();
  std::vector<double> normal_angle(m);
  double phi0 = 0, phi1 = 0;
  for (std::size_t i = 0; i < m; ++i) {
    Eigen::Vector2d e = poly[(i + 1) % m] - poly[i];
    Eigen::Vector2d n(-e.y(), e.x());
    n.normalize();
    normal_angle[i] = std::atan2(n.y(), n.x());
    for (int s = 0; s < steps; ++s) {
      double t = (s + 0.5) / steps;
      Eigen::VectorXd a(4);
      a << e.x(), e.y(), 0, 0;
      Eigen::VectorXd x = poly[i] + t * e;
      phi0 += lk_form_eval(0, x, n, {a}) / steps;
      phi1 += lk_form_eval(1, x, n, {a}) / steps;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    // Normals turn clockwise from edge i-1 to edge i at vertex i.
    double from = normal_angle[(i + m - 1) % m];
    double to = normal_angle[i];
    double turn = from - to;
    while (turn <= 0) turn += 2 * kPi;
    for (int s = 0; s < steps; ++s) {
      double theta = from - (s + 0.5) / steps * turn;
      Eigen::VectorXd n(2), a(4), x = poly[i];
      n << std::cos(theta), std::sin(theta);
      a << 0, 0, turn * std::sin(theta), -turn * std::cos(theta);
      phi0 += lk_form_eval(0, x, n, {a}) / steps;
      phi1 += lk_form_eval(1, x, n, {a}) / steps;
    }
  }
  return {phi0, phi1};
}

TEST(LkForm, NormalBundleQuadratureMatchesCurvature) {
  std::vector<std::vector<Eigen::Vector2d>> polygons = {
      {{0, 0}, {0, 1}, {1, 1}, {1, 0}},
      {{0, 0}, {1, 2}, {3, 0}},
      {{0, 0}, {-1, 2}, {1, 4}, {3, 3}, {2, 0}},
  };
  for (const auto& poly : polygons) {
    auto [phi0, phi1] = normal_bundle_integrals(poly, 64);
    std::vector<QVector> pts;
    for (const auto& p : poly) pts.push_back(rationalize(Eigen::VectorXd(p)));
    double perimeter = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) perimeter += (poly[(i + 1) % poly.size()] - poly[i]).norm();
    EXPECT_NEAR(phi0, 1.0, 1e-8);
    EXPECT_NEAR(phi1, perimeter / 2, 1e-8);
    // Same numbers from the external-angle route.
    std::vector<ConvexPolytope> hull_parts;
    ConvexPolytope hull{2, {}};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      QVector e = pts[(i + 1) % pts.size()] - pts[i];
      QVector n = qv({-e(1), e(0)});
      hull.constraints.push_back({n, n.dot(pts[i])});
    }
    CurvatureVector c = curvature_convex(hull);
    EXPECT_NEAR(c.value(0), phi0, 1e-8);
    EXPECT_NEAR(c.value(1), phi1, 1e-8);
  }
}

TEST(ExternalAngle, Examples) {
  ConvexPolytope square = testing::unit_cube(2);
  FaceLattice l = face_lattice(square);
  for (int v : l.faces_of_dimension(0)) EXPECT_EQ(*external_angle(square, l, v).exact, Rational(1, 4));
  for (int e : l.faces_of_dimension(1)) EXPECT_EQ(*external_angle(square, l, e).exact, Rational(1, 2));
  EXPECT_EQ(*external_angle(square, l, 0).exact, 1);

  ConvexPolytope cube = testing::unit_cube(3);
  FaceLattice lc = face_lattice(cube);
  for (int v : lc.faces_of_dimension(0)) EXPECT_EQ(*external_angle(cube, lc, v).exact, Rational(1, 8));

  ConvexPolytope tri = make_simplex({qv({0, 0}), qv({4, 0}), qv({1, 3})});
  FaceLattice lt = face_lattice(tri);
  for (int f : lt.faces_of_dimension(1)) EXPECT_EQ(*external_angle(tri, lt, f).exact, Rational(1, 2));
}

TEST(ExternalAngle, TriangleAnglesAreSupplements) {
  std::vector<QVector> pts = {qv({0, 0}), qv({4, 0}), qv({1, 3})};
  ConvexPolytope tri = make_simplex(pts);
  FaceLattice l = face_lattice(tri);
  for (int v : l.faces_of_dimension(0)) {
    const QVector& p = l.vertices[static_cast<std::size_t>(l.faces[static_cast<std::size_t>(v)].vertex_ids[0])];
    std::vector<Eigen::VectorXd> others;
    for (const auto& q : pts)
      if (q != p) others.push_back(to_double(QVector(q - p)));
    double interior = std::acos(others[0].normalized().dot(others[1].normalized()));
    EXPECT_NEAR(external_angle(tri, l, v).angle, (kPi - interior) / (2 * kPi), 1e-14);
  }
}

// Independent oracle for solid angles: hit rate of Gaussian vectors in the
// normal cone cone{tight normals}, tested through its polar description.
TEST(ExternalAngle, SolidAnglesAgreeWithSampling) {
  ConvexPolytope tet = make_simplex({qv({0, 0, 0}), qv({3, 0, 0}), qv({1, 2, 0}), qv({1, 1, 3})});
  FaceLattice l = face_lattice(tet);
  Rng rng(77);
  const int n = 200000;
  double total = 0;
  for (int v : l.faces_of_dimension(0)) {
    const QVector& p = l.vertices[static_cast<std::size_t>(l.faces[static_cast<std::size_t>(v)].vertex_ids[0])];
    std::vector<Eigen::VectorXd> edges;
    for (const auto& q : l.vertices)
      if (q != p) edges.push_back(to_double(QVector(q - p)));
    int hits = 0;
    for (int s = 0; s < n; ++s) {
      Eigen::VectorXd g = gaussian_vector(rng, 3);
      if (std::all_of(edges.begin(), edges.end(), [&](const Eigen::VectorXd& e) { return g.dot(e) <= 0; })) ++hits;
    }
    double phat = static_cast<double>(hits) / n;
    double sigma = std::sqrt(phat * (1 - phat) / n);
    FaceAngle a = external_angle(tet, l, v);
    EXPECT_FALSE(a.monte_carlo);
    EXPECT_NEAR(a.angle, phat, 4 * sigma);
    total += a.angle;
  }
  EXPECT_NEAR(total, 1.0, 1e-13);
}

TEST(ExternalAngle, GaussianEstimatorConverges) {
  ConvexPolytope simplex = make_simplex(
      {qv({0, 0, 0, 0}), qv({2, 0, 0, 0}), qv({0, 3, 0, 0}), qv({1, 1, 2, 0}), qv({1, 1, 1, 1})});
  FaceLattice l = face_lattice(simplex);
  const int v = l.faces_of_dimension(0)[0];
  AngleOptions coarse{3, 0, 20000};
  AngleOptions fine{3, 1, 80000};
  FaceAngle a = external_angle(simplex, l, v, coarse);
  FaceAngle b = external_angle(simplex, l, v, fine);
  ASSERT_TRUE(a.monte_carlo);
  EXPECT_NEAR(b.error / a.error, 0.5, 0.1);
  EXPECT_LT(std::abs(a.angle - b.angle), 3 * std::hypot(a.error, b.error));
  // Reproducible per face.
  EXPECT_EQ(external_angle(simplex, l, v, coarse).angle, a.angle);
}

TEST(CurvatureConvex, Examples) {
  expect_exact(curvature_convex(testing::unit_cube(2)), {1, 2, 1});
  expect_exact(curvature_convex(testing::unit_cube(3)), {1, 3, 3, 1});
  expect_exact(curvature_convex(make_box(qv({0}), qv({Rational(5, 2)}))), {1, Rational(5, 2)});
  EXPECT_THROW(curvature_convex(ConvexPolytope{1, {testing::hs({1}, 0), testing::hs({-1}, -1)}}), GeometryError);
}

TEST(CurvatureConvex, UnitCubesGiveBinomials) {
  for (int d = 2; d <= 4; ++d) {
    std::vector<Rational> expected;
    for (int k = 0; k <= d; ++k) expected.push_back(Rational(static_cast<long>(std::round(std::tgamma(d + 1) / (std::tgamma(k + 1) * std::tgamma(d - k + 1))))));
    expect_exact(curvature_convex(testing::unit_cube(d)), expected);
  }
}

TEST(CurvatureConvex, SimplexInFourDimensions) {
  ConvexPolytope simplex = make_simplex(
      {qv({0, 0, 0, 0}), qv({2, 0, 0, 0}), qv({0, 3, 0, 0}), qv({1, 1, 2, 0}), qv({1, 1, 1, 1})});
  CurvatureVector c = curvature_convex(simplex, {9, 0, 40000});
  EXPECT_NEAR(c.value(0), 1.0, 4 * c.error(0));
  EXPECT_GT(c.error(0), 0);
  EXPECT_EQ(*c.exact[4], *hausdorff_measure(simplex, 4).exact);
}

TEST(CurvatureConvex, LowerDimensionalPolytopeIsIntrinsic) {
  // A unit square lying in the plane z = 0 of R^3.
  ConvexPolytope flat = testing::unit_cube(3);
  flat.constraints.push_back(testing::hs({0, 0, 1}, 0));
  expect_exact(curvature_convex(flat), {1, 2, 1, 0});
}

TEST(CurvatureUnion, Examples) {
  expect_exact(curvature_union(testing::two_disjoint_squares()), {2, 4, 2});
  expect_exact(curvature_union(testing::l_shape()), {1, 4, 3});
  ConvexPolytope tri = make_simplex({qv({0, 0}), qv({4, 0}), qv({1, 3})});
  CurvatureVector a = curvature_union(testing::single(tri));
  CurvatureVector b = curvature_convex(tri);
  EXPECT_TRUE((a.value - b.value).cwiseAbs().maxCoeff() < 1e-15);
  expect_exact(curvature_union(PolyUnion{2, {}}), {0, 0, 0});
}

TEST(CurvatureLocalized, Examples) {
  PolyUnion square = testing::unit_square();
  ConvexPolytope everything = box({-1, -1}, {2, 2});
  expect_exact(curvature_localized(square, everything), {1, 2, 1});
  ConvexPolytope left{2, {testing::hs({1, 0}, Rational(1, 2))}};
  expect_exact(curvature_localized(square, left), {Rational(1, 2), 1, Rational(1, 2)});
  expect_exact(curvature_localized(square, box({5, 5}, {6, 6})), {0, 0, 0});
}

TEST(CurvatureLocalized, WindowsSplitAdditively) {
  PolyUnion l = testing::l_shape();
  ConvexPolytope lower{2, {testing::hs({1, 1}, Rational(3, 2))}};
  ConvexPolytope upper{2, {testing::hs({-1, -1}, Rational(-3, 2))}};
  ConvexPolytope cut{2, {testing::hs({1, 1}, Rational(3, 2)), testing::hs({-1, -1}, Rational(-3, 2))}};
  CurvatureVector sum = curvature_localized(l, lower);
  sum += curvature_localized(l, upper);
  sum -= curvature_localized(l, cut);
  CurvatureVector total = curvature_union(l);
  EXPECT_LT((sum.value - total.value).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(AffinePushforward, Examples) {
  PolyUnion square = testing::unit_square();
  QMatrix rot(2, 2);
  rot << Rational(3, 5), Rational(-4, 5), Rational(4, 5), Rational(3, 5);
  expect_exact(curvature_union(affine_pushforward(square, rot, qv({7, -2}))), {1, 2, 1});
  QMatrix two = QMatrix::Identity(2, 2) * Rational(2);
  expect_exact(curvature_union(affine_pushforward(square, two, qv({0, 0}))), {1, 4, 4});
  PolyUnion same = affine_pushforward(testing::l_shape(), QMatrix::Identity(2, 2), qv({0, 0}));
  for (const auto& x : {qv({1, 1}), qv({2, 2}), qv({Rational(3, 2), Rational(1, 2)})})
    EXPECT_EQ(contains(same, x), contains(testing::l_shape(), x));
  EXPECT_THROW(affine_pushforward(square, QMatrix::Zero(2, 2), qv({0, 0})), GeometryError);
}

TEST(CurvatureUnion, GaussBonnetOnCorpus) {
  for (const auto& scene : testing::standard_corpus(4)) {
    CurvatureVector c = curvature_union(scene.set);
    const int chi = euler(scene.set);
    EXPECT_LE(std::abs(c.value(0) - chi), std::max(c.error(0), 1e-12)) << scene.name;
    EXPECT_EQ(std::lround(c.value(0)), chi) << scene.name;
  }
}

TEST(CurvatureUnion, HomogeneityAndRigidMotion) {
  QMatrix rot(3, 3);
  rot << Rational(3, 5), Rational(-4, 5), 0, Rational(4, 5), Rational(3, 5), 0, 0, 0, 1;
  for (const auto& scene : testing::standard_corpus(2)) {
    const int d = scene.set.dimension;
    CurvatureVector base = curvature_union(scene.set);
    QMatrix lambda = QMatrix::Identity(d, d) * Rational(3);
    CurvatureVector scaled = curvature_union(affine_pushforward(scene.set, lambda, zeros(d)));
    QMatrix r = rot.topLeftCorner(d, d);
    CurvatureVector moved = curvature_union(affine_pushforward(scene.set, r, QVector::Ones(d)));
    for (int k = 0; k <= d; ++k) {
      double expected = std::pow(3.0, k) * base.value(k);
      EXPECT_NEAR(scaled.value(k), expected, 1e-12 * std::max(1.0, std::abs(expected))) << scene.name;
      EXPECT_NEAR(moved.value(k), base.value(k), 1e-12 * std::max(1.0, std::abs(base.value(k)))) << scene.name;
    }
  }
}

TEST(CurvatureUnion, AdditivityForTransversalPairs) {
  int pairs = 0;
  for (int trial = 0; pairs < 12 && trial < 200; ++trial) {
    Rng rng = make_rng(101, 0, static_cast<std::uint64_t>(trial));
    const int d = 2 + trial % 2;
    PolyUnion a = trial % 3 == 0 ? testing::random_simplex_union(rng, d, 2) : testing::random_box_union(rng, d, 2);
    PolyUnion b = testing::random_box_union(rng, d, 2);
    if (touches(a, b)) continue;
    PolyUnion both = union_union(a, b);
    if (both.parts.size() > inclusion_exclusion_cap()) continue;
    CurvatureVector lhs = curvature_union(a);
    lhs += curvature_union(b);
    CurvatureVector rhs = curvature_union(both);
    rhs += curvature_union(union_intersection(a, b));
    EXPECT_LT((lhs.value - rhs.value).cwiseAbs().maxCoeff(), 1e-9);
    for (int k = 0; k <= d; ++k)
      if (lhs.exact[static_cast<std::size_t>(k)] && rhs.exact[static_cast<std::size_t>(k)])
        EXPECT_EQ(*lhs.exact[static_cast<std::size_t>(k)], *rhs.exact[static_cast<std::size_t>(k)]);
    ++pairs;
  }
  EXPECT_EQ(pairs, 12);
}

}  // namespace
}  // namespace curvkit
