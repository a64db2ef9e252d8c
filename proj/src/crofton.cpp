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

#include "curvkit/crofton.hpp"

#include <cmath>
#include <numbers>

#include "curvkit/lp.hpp"

namespace curvkit {

namespace {

constexpr std::uint64_t kDirectStream = 1;
constexpr std::uint64_t kStagedStream = 2;

// Rows of P pulled back through u -> z + B u. Returns false when a
// constraint with vanishing pullback is violated, so the part misses E.
bool pull_back(const ConvexPolytope& p, const RationalFlat& e, ConvexPolytope& out, bool keep_flat_rows) {
  const auto m = static_cast<int>(e.basis.cols());
  out = ConvexPolytope{m, {}};
  const QMatrix bt = e.basis.transpose();
  for (const auto& h : p.constraints) {
    QVector n = bt * h.normal;
    Rational offset = h.offset - h.normal.dot(e.offset);
    if (is_zero(n)) {
      if (offset < 0) return false;
      // A zero row with zero offset makes the slack LP see the tangency.
      if (offset == 0 && keep_flat_rows) out.constraints.push_back({n, offset});
      continue;
    }
    out.constraints.push_back({std::move(n), std::move(offset)});
  }
  return true;
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double standard_error() const {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double var = std::max(0.0, (sum_sq - sum * sum / nn) / (nn - 1));
    return std::sqrt(var / nn);
  }
};

double distance_to_flat(const AffineSubspace& e, const Eigen::VectorXd& x) {
  Eigen::VectorXd r = x - e.offset;
  return (r - e.basis * (e.basis.transpose() * r)).norm();
}

}  // namespace

RationalFlat rationalize(const AffineSubspace& e, int bits) {
  RationalFlat out;
  out.basis.resize(e.basis.rows(), e.basis.cols());
  for (Eigen::Index i = 0; i < e.basis.rows(); ++i)
    for (Eigen::Index j = 0; j < e.basis.cols(); ++j) out.basis(i, j) = curvkit::rationalize(e.basis(i, j), bits);
  out.offset = curvkit::rationalize(e.offset, bits);
  return out;
}

double beta(int d, int i, int j) {
  if (d < 1 || i < 0 || j < 0 || i > d || j > d) throw InputError("beta indices out of range");
  if (i + j - d + 1 <= 0) throw InputError("beta requires i + j >= d");
  return std::tgamma(0.5 * (i + 1)) * std::tgamma(0.5 * (j + 1)) /
         (std::tgamma(0.5 * (d + 1)) * std::tgamma(0.5 * (i + j - d + 1)));
}

double ball_volume(int j) {
  if (j < 0) throw InputError("ball dimension must be nonnegative");
  return std::pow(std::numbers::pi, 0.5 * j) / std::tgamma(0.5 * j + 1);
}

Eigen::MatrixXd sample_grassmann(int d, int m, Rng& rng) {
  if (m < 1 || m > d) throw InputError("frame size must lie in [1, d]");
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::MatrixXd g(d, m);
    for (int j = 0; j < m; ++j) g.col(j) = gaussian_vector(rng, d);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    bool singular = false;
    for (int j = 0; j < m; ++j) singular = singular || std::abs(r(j, j)) < 1e-12;
    if (singular) continue;
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, m);
    // Sign fix so that the frame is Haar distributed.
    for (int j = 0; j < m; ++j)
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    return q;
  }
  throw GeometryError("repeated degenerate Gaussian draws");
}

WeightedFlat sample_affine_hitting(int d, int m, double radius, const Eigen::VectorXd& center, Rng& rng) {
  if (!(radius > 0)) throw InputError("window radius must be positive");
  if (m < 0 || m > d) throw InputError("flat dimension must lie in [0, d]");
  if (center.size() != d) throw InputError("window centre has the wrong dimension");
  WeightedFlat out;
  out.flat.dimension = m;
  const int c = d - m;
  Eigen::MatrixXd full;
  if (m == 0) {
    full = Eigen::MatrixXd::Identity(d, d);
    out.flat.basis = Eigen::MatrixXd(d, 0);
  } else {
    Eigen::MatrixXd frame = sample_grassmann(d, m, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame);
    full = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
    out.flat.basis = frame;
  }
  Eigen::MatrixXd perp = full.rightCols(c);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(c);
  if (c > 0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd dir = gaussian_vector(rng, c);
    while (dir.norm() < 1e-12) dir = gaussian_vector(rng, c);
    w = dir.normalized() * radius * std::pow(unit(rng), 1.0 / c);
  }
  out.flat.offset = perp * (perp.transpose() * center + w);
  out.weight = ball_volume(c) * std::pow(radius, c);
  return out;
}

PolyUnion restrict(const PolyUnion& a, const RationalFlat& e) {
  if (e.basis.rows() != a.dimension || e.offset.size() != a.dimension)
    throw InputError("flat dimension does not match the set");
  PolyUnion out{static_cast<int>(e.basis.cols()), {}};
  for (const auto& part : a.parts) {
    ConvexPolytope q;
    if (pull_back(part, e, q, false) && feasible(q)) out.parts.push_back(std::move(q));
  }
  return out;
}

PolyUnion restrict(const PolyUnion& a, const AffineSubspace& e) { return restrict(a, rationalize(e)); }

bool is_transversal(const PolyUnion& a, const RationalFlat& e) {
  if (e.basis.rows() != a.dimension) throw InputError("flat dimension does not match the set");
  bool transversal = true;
  for_each_nonempty_intersection(a, {}, [&](const std::vector<int>&, const ConvexPolytope& p) {
    if (!transversal) return;
    if (max_slack(constraint_matrix(p), constraint_offsets(p)).value <= 0) return;  // no interior
    ConvexPolytope q;
    if (!pull_back(p, e, q, true)) return;
    if (q.constraints.empty()) return;
    // < 0: E misses P; == 0: E meets P but not its interior.
    if (max_slack(constraint_matrix(q), constraint_offsets(q)).value == 0) transversal = false;
  });
  return transversal;
}

bool is_transversal(const PolyUnion& a, const AffineSubspace& e) { return is_transversal(a, rationalize(e)); }

std::pair<Eigen::VectorXd, double> covering_ball(const PolyUnion& a) {
  std::vector<Eigen::VectorXd> points;
  for (const auto& part : a.parts)
    if (feasible(part))
      for (const auto& v : vertices(part)) points.push_back(to_double(v));
  if (points.empty()) throw GeometryError("covering ball of an empty set");
  Eigen::VectorXd lo = points.front(), hi = points.front();
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Eigen::VectorXd center = 0.5 * (lo + hi);
  double r = 0.0;
  for (const auto& p : points) r = std::max(r, (p - center).norm());
  return {center, 1.1 * std::max(r, 1e-9)};
}

bool CroftonEstimate::agrees(double sigmas, double relative) const {
  return std::abs(mean - reference) <= sigmas * standard_error && standard_error <= relative * std::abs(reference);
}

CroftonEstimate crofton_estimate(const PolyUnion& a, int k, int m, std::size_t samples, double radius,
                                 std::uint64_t seed, std::uint64_t stream) {
  const int d = a.dimension;
  if (k < 0 || k > m || m > d) throw InputError("Crofton indices must satisfy 0 <= k <= m <= d");
  if (samples < 2) throw InputError("at least two samples are needed");
  CroftonEstimate est;
  est.k = k;
  est.m = m;
  const CurvatureVector whole = curvature_union(a);
  est.reference = beta(d, d + k - m, m) * whole.value(d + k - m);
  if (m == d) {
    est.mean = whole.value(k);
    est.standard_error = whole.error(k);
    est.samples = 1;
    return est;
  }
  auto [center, cover] = covering_ball(a);
  est.radius = radius > 0 ? radius : cover;
  const double scene_radius = cover / 1.1;
  Moments moments;
  std::uint64_t draw = 0;
  while (moments.n < samples) {
    Rng rng = make_rng(seed, stream, draw++);
    WeightedFlat f = sample_affine_hitting(d, m, est.radius, center, rng);
    if (distance_to_flat(f.flat, center) > scene_radius * (1 + 1e-9) + 1e-12) {
      moments.add(0.0);
      continue;
    }
    RationalFlat e = rationalize(f.flat);
    double value = 0.0;
    if (m == 0) {
      value = contains(a, e.offset) ? 1.0 : 0.0;
    } else {
      if (!is_transversal(a, e)) {
        ++est.rejected;
        if (est.rejected * 100 > samples)
          throw GeometryError("more than 1% of sampled flats are tangent to the set");
        continue;
      }
      PolyUnion slice = restrict(a, e);
      if (!slice.parts.empty()) value = curvature_union(slice).value(k);
    }
    moments.add(value * f.weight);
  }
  est.mean = moments.mean();
  est.standard_error = moments.standard_error();
  est.samples = moments.n;
  return est;
}

bool line_hits_box(const AffineSubspace& line, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  if (line.dimension != 1) throw InputError("slab test needs a line");
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    const double p = line.offset(i);
    const double v = line.basis(i, 0);
    if (std::abs(v) < 1e-300) {
      if (p < lo(i) || p > hi(i)) return false;
      continue;
    }
    double a = (lo(i) - p) / v, b = (hi(i) - p) / v;
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  return t0 <= t1;
}

DecompositionResult decomposition_check(int d, int m, int i, std::size_t samples, std::uint64_t seed,
                                        const std::function<double(const AffineSubspace&)>& integrand_in) {
  if (!(1 <= i && i < m && m <= d - 1)) throw InputError("decomposition check needs 1 <= i < m <= d-1");
  if (samples < 2) throw InputError("at least two samples are needed");
  const Eigen::VectorXd lo = Eigen::VectorXd::Zero(d);
  const Eigen::VectorXd hi = Eigen::VectorXd::Ones(d);
  std::function<double(const AffineSubspace&)> integrand = integrand_in;
  if (!integrand) {
    integrand = [&](const AffineSubspace& f) -> double {
      if (f.dimension == 1) return line_hits_box(f, lo, hi) ? 1.0 : 0.0;
      ConvexPolytope cube = make_box(zeros(d), QVector::Ones(d));
      ConvexPolytope q;
      return pull_back(cube, rationalize(f), q, false) && feasible(q) ? 1.0 : 0.0;
    };
  }
  const Eigen::VectorXd center = Eigen::VectorXd::Constant(d, 0.5);
  const double radius = 1.1 * std::sqrt(static_cast<double>(d)) / 2;

  Moments direct, staged;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = make_rng(seed, kDirectStream, s);
    WeightedFlat f = sample_affine_hitting(d, i, radius, center, rng);
    direct.add(f.weight * integrand(f.flat));
  }
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = make_rng(seed, kStagedStream, s);
    WeightedFlat e = sample_affine_hitting(d, m, radius, center, rng);
    // The window ball meets E in an m-ball about the foot of the centre.
    Eigen::VectorXd rel = center - e.flat.offset;
    Eigen::VectorXd foot = e.flat.basis.transpose() * rel;
    const double h = (rel - e.flat.basis * foot).norm();
    if (h >= radius) {
      staged.add(0.0);
      continue;
    }
    WeightedFlat g = sample_affine_hitting(m, i, std::sqrt(radius * radius - h * h), foot, rng);
    AffineSubspace f;
    f.dimension = i;
    f.basis = e.flat.basis * g.flat.basis;
    Eigen::VectorXd z = e.flat.offset + e.flat.basis * g.flat.offset;
    f.offset = z - f.basis * (f.basis.transpose() * z);
    staged.add(e.weight * g.weight * integrand(f));
  }
  DecompositionResult r;
  r.direct_mean = direct.mean();
  r.direct_error = direct.standard_error();
  r.staged_mean = staged.mean();
  r.staged_error = staged.standard_error();
  const double joint = std::hypot(r.direct_error, r.staged_error);
  if (joint > 0) {
    r.z = (r.direct_mean - r.staged_mean) / joint;
    r.p_value = std::erfc(std::abs(r.z) / std::sqrt(2.0));
  } else {
    r.z = 0.0;
    r.p_value = r.direct_mean == r.staged_mean ? 1.0 : 0.0;
  }
  return r;
}

}  // namespace curvkit
