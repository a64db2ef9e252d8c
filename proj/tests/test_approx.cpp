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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "curvkit/approx.hpp"
#include "support/shapes.hpp"

namespace curvkit {
namespace {

using testing::qv;

MaxAffine abs_axis(int d, int axis) {
  return make_max_affine(d, {{unit_vector(d, axis), 0}, {QVector(-unit_vector(d, axis)), 0}});
}

Box square(double half) {
  return Box{Eigen::VectorXd::Constant(2, -half), Eigen::VectorXd::Constant(2, half)};
}

Box interval(double lo, double hi) {
  return Box{Eigen::VectorXd::Constant(1, lo), Eigen::VectorXd::Constant(1, hi)};
}

// Leibniz expansion over all permutations.
Rational leibniz(const QMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    Rational term = inversions % 2 == 0 ? 1 : -1;
    for (int i = 0; i < n; ++i) term *= a(i, perm[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

QMatrix random_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rationalize(u(rng), 16);
  return m;
}

TEST(DetIdentity, Example) {
  QMatrix a = QMatrix::Zero(2, 2), b = QMatrix::Identity(2, 2);
  a(0, 0) = 2;
  a(1, 1) = 1;
  auto [lhs, rhs] = det_identity_check<Rational>(a, b);
  EXPECT_EQ(lhs, 0);
  EXPECT_EQ(rhs, 0);
}

TEST(DetIdentity, ExactOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      QMatrix a = random_matrix(rng, n), b = random_matrix(rng, n);
      auto [lhs, rhs] = det_identity_check<Rational>(a, b);
      EXPECT_EQ(lhs, rhs);
      if (n <= 4) EXPECT_EQ(lhs, leibniz(QMatrix(a - b)));
    }
}

TEST(DetIdentity, FloatingPointAgrees) {
  for (int n = 1; n <= 6; ++n) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n), b = Eigen::MatrixXd::Random(n, n);
    auto [lhs, rhs] = det_identity_check<double>(a, b);
    EXPECT_NEAR(lhs, rhs, 1e-9);
  }
}

TEST(DetIdentity, RejectsShapeMismatch) {
  EXPECT_THROW(det_identity_check<double>(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(3, 3)), InputError);
  EXPECT_THROW(det_identity_check<double>(Eigen::MatrixXd::Zero(2, 3), Eigen::MatrixXd::Zero(2, 3)), InputError);
}

TEST(Mollify, ReproducesAffineFunctions) {
  MaxAffine f = make_max_affine(2, {{qv({Rational(3, 2), -2}), Rational(1, 3)}});
  MollifiedField field = mollify(f, square(1.0), 0.2);
  EXPECT_LE(field.l1_gap, 1e-12);
  std::vector<int> j{5, 17};
  Eigen::VectorXd x = field.point(j);
  EXPECT_NEAR(field.at(j), 1.5 * x(0) - 2.0 * x(1) + 1.0 / 3.0, 1e-12);
  EXPECT_LE(field.hessian(j).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Mollify, AbsoluteValueAtTheKink) {
  // Continuous value at 0: eps * int |u| (1-u^2)^3 / int (1-u^2)^3 = 35 eps / 128.
  const double eps = 0.1;
  MollifiedField field = mollify(abs_axis(1, 0), interval(-0.5, 0.5), eps, 64);
  const int centre = field.cells[0] / 2;  // point at +h/2
  const double h = field.spacing(0);
  EXPECT_GT(field.at({centre}), 0.0);
  EXPECT_LE(field.at({centre}), eps);
  EXPECT_NEAR(field.at({centre}), 35.0 * eps / 128.0, 0.01 * eps + h);
}

TEST(Mollify, GapShrinksAlongLadder) {
  double previous = INFINITY;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    MollifiedField field = mollify(abs_axis(2, 0), square(1.0), eps);
    EXPECT_GT(field.l1_gap, 0.0);
    EXPECT_LT(field.l1_gap, previous);
    previous = field.l1_gap;
  }
}

TEST(Mollify, RejectsBadInput) {
  EXPECT_THROW(mollify(abs_axis(2, 0), square(1.0), 0.1, 1), InputError);
  EXPECT_THROW(mollify(abs_axis(2, 0), square(1.0), 0.0), InputError);
  EXPECT_THROW(mollify(abs_axis(2, 0), Box{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0)}, 0.1), InputError);
  EXPECT_THROW(mollify(abs_axis(1, 0), square(1.0), 0.1), InputError);
}

TEST(MinorBound, AbsoluteValueTotalCurvature) {
  MaxAffine zero = constant_function(1);
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    MinorBound b = minor_difference_bound(abs_axis(1, 0), zero, interval(-1.0, 1.0), 1, eps);
    EXPECT_NEAR(b.lhs, 2.0, 1e-3);
    EXPECT_TRUE(b.holds);
  }
}

TEST(MinorBound, OrderZeroIsVolume) {
  MinorBound b = minor_difference_bound(abs_axis(2, 0), abs_axis(2, 1), square(1.0), 0, 0.2);
  EXPECT_DOUBLE_EQ(b.lhs, 4.0);
  EXPECT_DOUBLE_EQ(b.rhs, 4.0);
  EXPECT_TRUE(b.holds);
}

TEST(MinorBound, AbsDifferenceLadderIsBounded) {
  DCFunction f = make_dc(abs_axis(2, 0), abs_axis(2, 1));
  LadderReport report = approximation_ladder(f, square(1.0), {0.2, 0.1, 0.05, 0.025});
  ASSERT_EQ(report.rungs.size(), 4u);
  EXPECT_TRUE(report.bounded(0.1));
  EXPECT_TRUE(report.inequalities_hold());
  for (const auto& rung : report.rungs) {
    // Hessian is diag(phi''(x), -phi''(y)); each factor integrates to 2 per unit of the other axis.
    EXPECT_NEAR(rung.bounds[0].lhs, 4.0, 1e-6);
    EXPECT_NEAR(rung.bounds[1].lhs, 4.0, 1e-6);
    EXPECT_LE(rung.bounds[1].lhs, rung.bounds[1].rhs + rung.bounds[1].slack);
  }
}

TEST(MinorBound, HoldsForRandomFunctions) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 6; ++trial) {
    auto random_max = [&](int pieces) {
      std::vector<AffinePiece> ps;
      for (int i = 0; i < pieces; ++i)
        ps.push_back({qv({Rational(coeff(rng), 2), Rational(coeff(rng), 2)}), Rational(coeff(rng), 8)});
      return make_max_affine(2, ps);
    };
    MaxAffine g = random_max(3), h = random_max(3);
    for (int m = 1; m <= 2; ++m) {
      MinorBound b = minor_difference_bound(g, h, square(1.0), m, 0.2);
      EXPECT_TRUE(b.holds) << "trial " << trial << " order " << m;
      EXPECT_LE(b.lhs, b.rhs + b.slack);
    }
  }
}

TEST(MinorBound, MinorIntegralMatchesBound) {
  MaxAffine g = make_max_affine(2, {{qv({1, 1}), 0}, {qv({-1, 2}), 0}, {qv({0, -1}), Rational(1, 4)}});
  MaxAffine h = abs_axis(2, 0);
  Box k = square(1.0);
  MinorBound b = minor_difference_bound(g, h, k, 2, 0.1);
  MollifiedField fg = mollify(g, k, 0.1), fh = mollify(h, k, 0.1);
  EXPECT_NEAR(minor_integral({&fg, &fh}, {1.0, -1.0}, {0, 1}, {0, 1}), b.lhs, 1e-9 * (1.0 + b.lhs));
}

TEST(MongeAmpere, Examples) {
  auto abs1 = monge_ampere_mass(abs_axis(1, 0), qv({-1}), qv({1}));
  ASSERT_TRUE(abs1.exact.has_value());
  EXPECT_EQ(*abs1.exact, 2);
  EXPECT_TRUE(abs1.covers_vertex());

  MaxAffine l1 = make_max_affine(2, {{qv({1, 1}), 0}, {qv({1, -1}), 0}, {qv({-1, 1}), 0}, {qv({-1, -1}), 0}});
  auto m = monge_ampere_mass(l1, qv({-1, -1}), qv({1, 1}));
  ASSERT_TRUE(m.exact.has_value());
  EXPECT_EQ(*m.exact, 4);

  auto affine = monge_ampere_mass(make_max_affine(2, {{qv({2, 3}), 1}}), qv({-1, -1}), qv({1, 1}));
  EXPECT_EQ(affine.mass, 0.0);
  EXPECT_FALSE(affine.covers_vertex());

  // Vertex outside K contributes nothing.
  auto far = monge_ampere_mass(l1, qv({2, 2}), qv({3, 3}));
  EXPECT_FALSE(far.covers_vertex());
}

TEST(MongeAmpere, SumsOverSeveralVertices) {
  // |x| + |x - 1| in one variable: two kinks, each with jump 2.
  MaxAffine f = make_max_affine(1, {{qv({2}), -1}, {qv({0}), 1}, {qv({-2}), 1}});
  auto m = monge_ampere_mass(f, qv({-1}), qv({2}));
  EXPECT_EQ(m.vertices, 2u);
  EXPECT_EQ(*m.exact, 4);
}

// Shoelace area of the convex hull (monotone chain), independent of the
// polyhedral machinery.
double shoelace_hull(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
  };
  std::vector<Eigen::Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) area += hull[i].x() * hull[i + 1].y() - hull[i + 1].x() * hull[i].y();
  return std::abs(area) / 2.0;
}

TEST(MongeAmpere, HullVolumeMatchesShoelace) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> c(-8, 8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<QVector> pts;
    std::vector<Eigen::Vector2d> dpts;
    for (int i = 0; i < 7; ++i) {
      QVector p = qv({Rational(c(rng), 4), Rational(c(rng), 4)});
      pts.push_back(p);
      dpts.emplace_back(to_double(p(0)), to_double(p(1)));
    }
    Measure m = hull_volume(pts);
    EXPECT_NEAR(m.value, shoelace_hull(dpts), 1e-12);
  }
}

TEST(MongeAmpere, BoundsMollifiedDeterminant) {
  // max(x, y, -x-y): one vertex whose subdifferential is a triangle of area 3/2.
  MaxAffine g = make_max_affine(2, {{qv({1, 0}), 0}, {qv({0, 1}), 0}, {qv({-1, -1}), 0}});
  auto mass = monge_ampere_mass(g, qv({-1, -1}), qv({1, 1}));
  EXPECT_EQ(*mass.exact, Rational(3, 2));
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    Box k = square(1.0);
    MollifiedField fg = mollify(g, k, eps);
    const double integral = minor_integral({&fg}, {1.0}, {0, 1}, {0, 1});
    EXPECT_LE(integral, mass.mass * (1.0 + 1e-2));
    EXPECT_GT(integral, 0.9 * mass.mass);
  }
}

TEST(MinorBound, ObliqueKinksLadderIsBounded) {
  MaxAffine g = make_max_affine(2, {{qv({1, 0}), 0}, {qv({0, 1}), 0}, {qv({-1, -1}), 0}});
  MaxAffine h = make_max_affine(2, {{qv({1, 2}), Rational(1, 5)}, {qv({-2, 1}), 0}});
  LadderReport report = approximation_ladder(make_dc(g, h), square(1.0), {0.2, 0.1, 0.05, 0.025});
  EXPECT_TRUE(report.inequalities_hold());
  // Kinks crossing each other cancel partially at coarse eps, so the lhs
  // values move; the ceiling does not.
  for (std::size_t m = 0; m < 2; ++m) {
    double lo = INFINITY, hi = 0.0;
    for (const auto& rung : report.rungs) {
      lo = std::min(lo, rung.bounds[m].rhs);
      hi = std::max(hi, rung.bounds[m].rhs);
    }
    EXPECT_LT((hi - lo) / hi, 1e-2);
    for (const auto& rung : report.rungs) EXPECT_LE(rung.bounds[m].lhs, lo * (1.0 + 1e-2));
  }
  const auto& last = report.rungs.back().bounds;
  const auto& prev = report.rungs[2].bounds;
  EXPECT_LT(std::abs(last[1].lhs - prev[1].lhs) / last[1].lhs, 0.1);
}

}  // namespace
}  // namespace curvkit
