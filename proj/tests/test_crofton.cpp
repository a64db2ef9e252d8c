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

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numbers>

#include "curvkit/crofton.hpp"
#include "curvkit/linalg.hpp"
#include "support/corpus.hpp"
#include "support/shapes.hpp"

namespace curvkit {
namespace {

using testing::qv;
constexpr double kPi = std::numbers::pi;

AffineSubspace line(Eigen::Vector2d direction, Eigen::Vector2d offset) {
  AffineSubspace e;
  e.dimension = 1;
  e.basis = direction.normalized();
  e.offset = offset;
  return e;
}

TEST(Beta, Examples) {
  for (int d = 1; d <= 10; ++d)
    for (int m = 0; m <= d; ++m) EXPECT_NEAR(beta(d, d, m), 1.0, 1e-12) << d << " " << m;
  EXPECT_NEAR(beta(2, 1, 1), 2 / kPi, 1e-12);
  EXPECT_NEAR(beta(3, 2, 2), kPi / 4, 1e-12);
  EXPECT_THROW(beta(3, 1, 1), InputError);
  EXPECT_THROW(beta(3, 4, 1), InputError);
}

TEST(BallVolume, LowDimensions) {
  EXPECT_DOUBLE_EQ(ball_volume(0), 1.0);
  EXPECT_NEAR(ball_volume(1), 2.0, 1e-15);
  EXPECT_NEAR(ball_volume(2), kPi, 1e-15);
  EXPECT_NEAR(ball_volume(3), 4 * kPi / 3, 1e-14);
}

TEST(Substreams, DeterministicAndDistinct) {
  Rng a = make_rng(5, 1, 2), b = make_rng(5, 1, 2), c = make_rng(5, 1, 3), e = make_rng(5, 2, 2);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, e());
  EXPECT_NE(substream_seed(1, 0, 0), substream_seed(2, 0, 0));
}

TEST(SampleGrassmann, OrthonormalFrames) {
  Rng rng = make_rng(1, 0, 0);
  for (int d = 2; d <= 6; ++d)
    for (int m = 1; m < d; ++m) {
      Eigen::MatrixXd q = sample_grassmann(d, m, rng);
      EXPECT_LE((q.transpose() * q - Eigen::MatrixXd::Identity(m, m)).norm(), 1e-12);
    }
  EXPECT_THROW(sample_grassmann(3, 0, rng), InputError);
}

TEST(SampleGrassmann, DirectionsUniformOnTheCircle) {
  Rng rng = make_rng(2, 0, 0);
  const int n = 100000, bins = 36;
  std::vector<int> counts(bins, 0);
  for (int s = 0; s < n; ++s) {
    Eigen::MatrixXd q = sample_grassmann(2, 1, rng);
    double theta = std::atan2(q(1, 0), q(0, 0)) + kPi;
    counts[std::min(bins - 1, static_cast<int>(theta / (2 * kPi) * bins))]++;
  }
  double chi2 = 0, expected = static_cast<double>(n) / bins;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  boost::math::chi_squared dist(bins - 1);
  EXPECT_GT(1 - boost::math::cdf(dist, chi2), 0.01);
}

TEST(SampleGrassmann, RotationInvariantProjector) {
  // E[Q Q^T] = (m/d) I for an invariant distribution; a fixed rotation of
  // the frames leaves the projector statistics unchanged.
  Rng rng = make_rng(3, 0, 0);
  const int n = 20000, d = 3, m = 2;
  Eigen::Matrix3d rot;
  rot << 0.36, -0.48, 0.8, 0.8, 0.6, 0.0, -0.48, 0.64, 0.6;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d), sum_rot = sum;
  for (int s = 0; s < n; ++s) {
    Eigen::MatrixXd q = sample_grassmann(d, m, rng);
    sum += q * q.transpose();
    Eigen::MatrixXd r = rot * q;
    sum_rot += r * r.transpose();
  }
  // Diagonal entries have standard deviation below 0.3 per sample.
  const double band = 4 * 0.3 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double target = i == j ? static_cast<double>(m) / d : 0.0;
      EXPECT_NEAR(sum(i, j) / n, target, band);
      EXPECT_NEAR(sum_rot(i, j) / n, target, band);
    }
}

TEST(SampleAffineHitting, GeometryAndWeight) {
  Rng rng = make_rng(4, 0, 0);
  Eigen::VectorXd center(3);
  center << 1, 2, 3;
  for (int m = 0; m <= 3; ++m) {
    WeightedFlat f = sample_affine_hitting(3, m, 2.0, center, rng);
    EXPECT_EQ(f.flat.dimension, m);
    EXPECT_NEAR(f.weight, ball_volume(3 - m) * std::pow(2.0, 3 - m), 1e-12);
    if (m > 0) EXPECT_LE((f.flat.basis.transpose() * f.flat.offset).norm(), 1e-12);
    Eigen::VectorXd rel = center - f.flat.offset;
    double dist = (rel - f.flat.basis * (f.flat.basis.transpose() * rel)).norm();
    EXPECT_LE(dist, 2.0 + 1e-12);
  }
  EXPECT_THROW(sample_affine_hitting(3, 1, 0.0, center, rng), InputError);
}

TEST(SampleAffineHitting, LinesMeetingSquareHaveMeasurePerimeterOverPi) {
  const std::size_t n = 40000;
  double sum = 0, sum_sq = 0;
  Eigen::VectorXd center = Eigen::VectorXd::Zero(2), lo(2), hi(2);
  lo << -0.5, -0.5;
  hi << 0.5, 0.5;
  for (std::size_t s = 0; s < n; ++s) {
    Rng rng = make_rng(8, 0, s);
    WeightedFlat f = sample_affine_hitting(2, 1, 2.0, center, rng);
    double v = line_hits_box(f.flat, lo, hi) ? f.weight : 0.0;
    sum += v;
    sum_sq += v * v;
  }
  double mean = sum / n, se = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
  EXPECT_NEAR(mean, 4 / kPi, 3 * se);
}

TEST(Restrict, Examples) {
  PolyUnion square = testing::unit_square();
  PolyUnion seg = restrict(square, line({1, 0}, {0, 0.5}));
  ASSERT_EQ(seg.parts.size(), 1u);
  auto vs = vertices(seg.parts[0]);
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_EQ(std::min(vs[0](0), vs[1](0)), 0);
  EXPECT_EQ(std::max(vs[0](0), vs[1](0)), 1);
  EXPECT_TRUE(restrict(square, line({1, 0}, {0, 3})).parts.empty());

  PolyUnion cube = testing::single(testing::unit_cube(3));
  Rng rng = make_rng(12, 0, 0);
  Eigen::VectorXd center = Eigen::VectorXd::Constant(3, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    WeightedFlat f = sample_affine_hitting(3, 2, 0.3, center, rng);
    PolyUnion slice = restrict(cube, f.flat);
    ASSERT_EQ(slice.parts.size(), 1u);
    auto n = vertices(slice.parts[0]).size();
    EXPECT_GE(n, 3u);
    EXPECT_LE(n, 6u);
  }
}

TEST(Restrict, HyperplaneSlicesMatchDirectEuler) {
  auto corpus = testing::standard_corpus(3);
  int checked = 0;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const PolyUnion& a = corpus[s].set;
    const int d = a.dimension;
    auto [center, radius] = covering_ball(a);
    for (int trial = 0; trial < 10; ++trial) {
      Rng rng = make_rng(13, s, static_cast<std::uint64_t>(trial));
      RationalFlat e = rationalize(sample_affine_hitting(d, d - 1, radius, center, rng).flat);
      QMatrix normal = nullspace(QMatrix(e.basis.transpose()));
      ASSERT_EQ(normal.cols(), 1);
      QVector v = normal.col(0);
      Rational t = v.dot(e.offset);
      std::vector<Halfspace> slab = {{v, t}, {QVector(-v), -t}};
      EXPECT_EQ(euler(restrict(a, e)), euler_with(a, slab)) << corpus[s].name;
      ++checked;
    }
  }
  EXPECT_GE(checked, 100);
}

TEST(IsTransversal, Examples) {
  PolyUnion square = testing::unit_square();
  EXPECT_FALSE(is_transversal(square, line({1, 0}, {0, 0})));
  EXPECT_FALSE(is_transversal(square, line({1, 1}, {0.5, -0.5})));  // through a corner only
  EXPECT_TRUE(is_transversal(square, line({1, 0.3}, {0, 0.4})));
  EXPECT_TRUE(is_transversal(square, line({1, 0}, {0, 5})));
}

TEST(CroftonEstimate, SquareLines) {
  CroftonEstimate e = crofton_estimate(testing::unit_square(), 0, 1, 4000, 0, 21);
  EXPECT_NEAR(e.reference, 4 / kPi, 1e-12);
  EXPECT_TRUE(e.agrees(3, 0.03)) << e.mean << " +- " << e.standard_error;
  EXPECT_EQ(e.rejected, 0u);
  EXPECT_EQ(e.samples, 4000u);
}

TEST(CroftonEstimate, ExactCases) {
  PolyUnion cube = testing::single(testing::unit_cube(3));
  CroftonEstimate full = crofton_estimate(cube, 3, 3, 100, 0, 1);
  EXPECT_EQ(full.mean, 1.0);
  EXPECT_EQ(full.reference, 1.0);
  EXPECT_EQ(full.standard_error, 0.0);
  CroftonEstimate two = crofton_estimate(cube, 1, 3, 100, 0, 1);
  EXPECT_NEAR(two.mean, 3.0, 1e-15);
  EXPECT_NEAR(two.reference, 3.0, 1e-12);
  EXPECT_THROW(crofton_estimate(cube, 2, 1, 100, 0, 1), InputError);
}

TEST(CroftonEstimate, PointsMeasureVolume) {
  PolyUnion l = testing::l_shape();
  CroftonEstimate e = crofton_estimate(l, 0, 0, 4000, 0, 5);
  EXPECT_NEAR(e.reference, 3.0, 1e-12);
  EXPECT_NEAR(e.mean, 3.0, 3 * e.standard_error);
}

TEST(CroftonEstimate, RigidMotionInvariance) {
  PolyUnion cube = testing::single(testing::unit_cube(3));
  QMatrix rot(3, 3);
  rot << Rational(3, 5), Rational(-4, 5), 0, Rational(4, 5), Rational(3, 5), 0, 0, 0, 1;
  PolyUnion moved = affine_pushforward(cube, rot, qv({2, -1, Rational(1, 3)}));
  CroftonEstimate a = crofton_estimate(cube, 0, 1, 1500, 0, 31);
  CroftonEstimate b = crofton_estimate(moved, 0, 1, 1500, 0, 31);
  EXPECT_NEAR(a.reference, b.reference, 1e-12);
  EXPECT_LE(std::abs(a.mean - b.mean), 3 * std::hypot(a.standard_error, b.standard_error));
  EXPECT_EQ(a.rejected + b.rejected, 0u);
}

TEST(DecompositionCheck, Examples) {
  DecompositionResult r = decomposition_check(3, 2, 1, 4000, 17);
  EXPECT_TRUE(r.passed()) << r.direct_mean << " vs " << r.staged_mean << " z=" << r.z;
  EXPECT_NEAR(r.direct_mean, 1.5, 4 * r.direct_error);
  DecompositionResult zero = decomposition_check(3, 2, 1, 100, 17, [](const AffineSubspace&) { return 0.0; });
  EXPECT_EQ(zero.direct_mean, 0.0);
  EXPECT_EQ(zero.staged_mean, 0.0);
  EXPECT_TRUE(zero.passed());
  EXPECT_THROW(decomposition_check(2, 1, 1, 100, 17), InputError);
}

}  // namespace
}  // namespace curvkit
