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

#include "curvkit/approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>

#include "curvkit/cone.hpp"

namespace curvkit {

namespace {

// Writes f(x) and a gradient of f at x (the mean of the active gradients at a tie).
using Sampler = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

double sample_max_affine(const MaxAffineT<double>& g, const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
  double best = -INFINITY;
  for (const auto& p : g.pieces) best = std::max(best, p(x));
  grad.setZero(x.size());
  int ties = 0;
  for (const auto& p : g.pieces)
    if (p(x) == best) {
      grad += p.gradient;
      ++ties;
    }
  grad /= ties;
  return best;
}

void check_domain(const Box& k, double epsilon, int points_per_eps) {
  if (k.lo.size() == 0 || k.lo.size() != k.hi.size()) throw InputError("box corners must share a positive dimension");
  if ((k.hi.array() <= k.lo.array()).any()) throw InputError("box must have lo < hi on every axis");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InputError("mollification radius must be positive");
  if (points_per_eps < 2) throw InputError("grid must place at least two points per mollification radius");
}

// Calls visit(index) for every index in [begin, end) along each axis.
void for_each_index(const std::vector<int>& begin, const std::vector<int>& end,
                    const std::function<void(const std::vector<int>&)>& visit) {
  const std::size_t d = begin.size();
  for (std::size_t i = 0; i < d; ++i)
    if (end[i] <= begin[i]) return;
  std::vector<int> index = begin;
  while (true) {
    visit(index);
    std::size_t axis = d;
    while (axis > 0) {
      --axis;
      if (++index[axis] < end[axis]) break;
      index[axis] = begin[axis];
      if (axis == 0) return;
    }
  }
}

MollifiedField mollify_sampler(const Sampler& f, const Box& k, double epsilon, int points_per_eps) {
  check_domain(k, epsilon, points_per_eps);
  const int d = k.dimension();
  const double target = epsilon / points_per_eps;

  MollifiedField field;
  field.domain = k;
  field.epsilon = epsilon;
  field.spacing.resize(d);
  field.cells.resize(static_cast<std::size_t>(d));
  int margin = 0;
  std::vector<int> reach(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const double length = k.hi(i) - k.lo(i);
    const int n = std::max(1, static_cast<int>(std::ceil(length / target - 1e-9)));
    field.cells[static_cast<std::size_t>(i)] = n;
    field.spacing(i) = length / n;
    margin = std::max(margin, static_cast<int>(std::ceil(3.0 * epsilon / field.spacing(i))));
    reach[static_cast<std::size_t>(i)] = static_cast<int>(std::ceil(epsilon / field.spacing(i)));
  }
  field.margin = margin;

  // Kernel on the lattice, normalized to unit discrete mass.
  std::vector<std::vector<int>> offsets;
  std::vector<double> weights;
  {
    std::vector<int> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      lo[static_cast<std::size_t>(i)] = -reach[static_cast<std::size_t>(i)];
      hi[static_cast<std::size_t>(i)] = reach[static_cast<std::size_t>(i)] + 1;
    }
    double total = 0.0;
    for_each_index(lo, hi, [&](const std::vector<int>& u) {
      double r2 = 0.0;
      for (int i = 0; i < d; ++i) {
        const double x = u[static_cast<std::size_t>(i)] * field.spacing(i);
        r2 += x * x;
      }
      const double s = 1.0 - r2 / (epsilon * epsilon);
      if (s <= 0.0) return;
      offsets.push_back(u);
      weights.push_back(s * s * s);
      total += s * s * s;
    });
    for (double& w : weights) w /= total;
  }

  // Raw samples of f on the lattice padded by the kernel reach.
  std::vector<int> raw_begin(static_cast<std::size_t>(d)), raw_end(static_cast<std::size_t>(d));
  std::vector<long> raw_stride(static_cast<std::size_t>(d));
  long raw_size = 1;
  for (int i = d - 1; i >= 0; --i) {
    const auto a = static_cast<std::size_t>(i);
    raw_begin[a] = -margin - reach[a];
    raw_end[a] = field.cells[a] + margin + reach[a];
    raw_stride[a] = raw_size;
    raw_size *= raw_end[a] - raw_begin[a];
  }
  std::vector<double> raw;
  std::vector<double> raw_grad;
  raw.reserve(static_cast<std::size_t>(raw_size));
  raw_grad.reserve(static_cast<std::size_t>(raw_size * d));
  Eigen::VectorXd x(d), grad(d);
  for_each_index(raw_begin, raw_end, [&](const std::vector<int>& j) {
    for (int i = 0; i < d; ++i) x(i) = k.lo(i) + (j[static_cast<std::size_t>(i)] + 0.5) * field.spacing(i);
    raw.push_back(f(x, grad));
    for (int i = 0; i < d; ++i) raw_grad.push_back(grad(i));
  });
  auto raw_flat = [&](const std::vector<int>& j) {
    long flat = 0;
    for (std::size_t a = 0; a < j.size(); ++a) flat += (j[a] - raw_begin[a]) * raw_stride[a];
    return flat;
  };
  std::vector<long> shifts;
  shifts.reserve(offsets.size());
  for (const auto& u : offsets) {
    long s = 0;
    for (std::size_t a = 0; a < u.size(); ++a) s += u[a] * raw_stride[a];
    shifts.push_back(s);
  }

  std::vector<int> begin(static_cast<std::size_t>(d), -margin), end(static_cast<std::size_t>(d));
  for (std::size_t a = 0; a < end.size(); ++a) end[a] = field.cells[a] + margin;
  for_each_index(begin, end, [&](const std::vector<int>& j) {
    const long centre = raw_flat(j);
    double sum = 0.0;
    std::vector<double> gsum(static_cast<std::size_t>(d), 0.0);
    for (std::size_t t = 0; t < shifts.size(); ++t) {
      const auto at = static_cast<std::size_t>(centre - shifts[t]);
      sum += weights[t] * raw[at];
      for (std::size_t a = 0; a < gsum.size(); ++a) gsum[a] += weights[t] * raw_grad[at * gsum.size() + a];
    }
    field.values.push_back(sum);
    field.gradients.insert(field.gradients.end(), gsum.begin(), gsum.end());
  });

  const double cell = field.spacing.prod();
  double gap = 0.0;
  std::vector<int> zero(static_cast<std::size_t>(d), 0);
  for_each_index(zero, field.cells, [&](const std::vector<int>& j) {
    gap += std::abs(field.at(j) - raw[static_cast<std::size_t>(raw_flat(j))]);
  });
  field.l1_gap = gap * cell;
  return field;
}

std::vector<std::vector<int>> subsets_of_size(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int)> grow = [&](int start) {
    if (static_cast<int>(current.size()) == m) {
      out.push_back(current);
      return;
    }
    for (int i = start; i < n; ++i) {
      current.push_back(i);
      grow(i + 1);
      current.pop_back();
    }
  };
  grow(0);
  return out;
}

double minor_det(const Eigen::MatrixXd& h, const std::vector<int>& rows, const std::vector<int>& cols) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  if (m == 0) return 1.0;
  Eigen::MatrixXd sub(m, m);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c) sub(r, c) = h(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
  return sub.determinant();
}

MinorBound bound_from_fields(const MollifiedField& fg, const MollifiedField& fh, int order) {
  const int d = fg.domain.dimension();
  if (order < 0 || order > d) throw InputError("minor order must lie in 0..d");
  const auto sets = subsets_of_size(d, order);
  const std::size_t pairs = sets.size() * sets.size();
  std::vector<double> lhs(pairs, 0.0), rhs(pairs, 0.0);

  // binom(m, l) / m!
  std::vector<double> coeff(static_cast<std::size_t>(order) + 1);
  {
    double factorial = 1.0;
    for (int i = 2; i <= order; ++i) factorial *= i;
    double binom = 1.0;
    for (int l = 0; l <= order; ++l) {
      coeff[static_cast<std::size_t>(l)] = binom / factorial;
      binom = binom * (order - l) / (l + 1);
    }
  }

  std::vector<int> zero(static_cast<std::size_t>(d), 0);
  for_each_index(zero, fg.cells, [&](const std::vector<int>& j) {
    const Eigen::MatrixXd hg = fg.hessian(j);
    const Eigen::MatrixXd hh = fh.hessian(j);
    const Eigen::MatrixXd diff = hg - hh;
    std::vector<Eigen::MatrixXd> mixes;
    for (int l = 0; l <= order; ++l) mixes.push_back(static_cast<double>(order - l) * hg + static_cast<double>(l) * hh);
    std::size_t p = 0;
    for (const auto& rows : sets)
      for (const auto& cols : sets) {
        lhs[p] += std::abs(minor_det(diff, rows, cols));
        double bound = 0.0;
        for (int l = 0; l <= order; ++l)
          bound += coeff[static_cast<std::size_t>(l)] * std::abs(minor_det(mixes[static_cast<std::size_t>(l)], rows, cols));
        rhs[p] += bound;
        ++p;
      }
  });

  const double cell = fg.spacing.prod();
  MinorBound out;
  out.order = order;
  out.holds = true;
  std::size_t best = 0;
  for (std::size_t p = 0; p < pairs; ++p) {
    lhs[p] *= cell;
    rhs[p] *= cell;
    if (lhs[p] > lhs[best]) best = p;
    if (lhs[p] > rhs[p] + 1e-9 * (1.0 + rhs[p])) out.holds = false;
  }
  out.lhs = lhs[best];
  out.rhs = rhs[best];
  out.slack = 1e-9 * (1.0 + out.rhs);
  out.rows = sets[best / sets.size()];
  out.cols = sets[best % sets.size()];
  return out;
}

}  // namespace

double MollifiedField::at(const std::vector<int>& index) const {
  return values[flat_index(index)];
}

std::size_t MollifiedField::flat_index(const std::vector<int>& index) const {
  long flat = 0;
  long stride = 1;
  for (int i = static_cast<int>(index.size()) - 1; i >= 0; --i) {
    const auto a = static_cast<std::size_t>(i);
    const int extent = cells[a] + 2 * margin;
    const int shifted = index[a] + margin;
    if (shifted < 0 || shifted >= extent) throw InputError("lattice index outside the mollified field");
    flat += shifted * stride;
    stride *= extent;
  }
  return static_cast<std::size_t>(flat);
}

Eigen::VectorXd MollifiedField::gradient(const std::vector<int>& index) const {
  const int d = domain.dimension();
  const std::size_t base = flat_index(index) * static_cast<std::size_t>(d);
  Eigen::VectorXd g(d);
  for (int i = 0; i < d; ++i) g(i) = gradients[base + static_cast<std::size_t>(i)];
  return g;
}

Eigen::VectorXd MollifiedField::point(const std::vector<int>& index) const {
  Eigen::VectorXd x(domain.dimension());
  for (int i = 0; i < x.size(); ++i) x(i) = domain.lo(i) + (index[static_cast<std::size_t>(i)] + 0.5) * spacing(i);
  return x;
}

Eigen::MatrixXd MollifiedField::hessian(const std::vector<int>& index) const {
  const int d = domain.dimension();
  Eigen::MatrixXd h(d, d);
  std::vector<int> j = index;
  for (int a = 0; a < d; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    j[ua] = index[ua] + 1;
    const Eigen::VectorXd up = gradient(j);
    j[ua] = index[ua] - 1;
    const Eigen::VectorXd down = gradient(j);
    j[ua] = index[ua];
    h.row(a) = (up - down).transpose() / (2.0 * spacing(a));
  }
  return h;
}

MollifiedField mollify(const DCFunction& f, const Box& k, double epsilon, int points_per_eps) {
  if (f.dimension() != k.dimension()) throw InputError("function and box dimensions differ");
  const DCFunctionT<double> g = to_double(f);
  Eigen::VectorXd scratch;
  const Sampler sample = [g, scratch](const Eigen::VectorXd& x, Eigen::VectorXd& grad) mutable {
    const double plus = sample_max_affine(g.plus, x, grad);
    const double minus = sample_max_affine(g.minus, x, scratch);
    grad -= scratch;
    return plus - minus;
  };
  MollifiedField out = mollify_sampler(sample, k, epsilon, points_per_eps);
  out.source = f;
  return out;
}

MollifiedField mollify(const MaxAffine& g, const Box& k, double epsilon, int points_per_eps) {
  return mollify(make_dc(g), k, epsilon, points_per_eps);
}

double minor_integral(const std::vector<const MollifiedField*>& fields, const std::vector<double>& coeffs,
                      const std::vector<int>& rows, const std::vector<int>& cols) {
  if (fields.empty() || fields.size() != coeffs.size()) throw InputError("need one coefficient per field");
  if (rows.size() != cols.size()) throw InputError("minor needs as many rows as columns");
  const MollifiedField& first = *fields.front();
  for (const auto* f : fields)
    if (f->cells != first.cells || f->margin != first.margin || f->spacing != first.spacing)
      throw InputError("fields live on different lattices");
  double sum = 0.0;
  std::vector<int> zero(first.cells.size(), 0);
  for_each_index(zero, first.cells, [&](const std::vector<int>& j) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(first.domain.dimension(), first.domain.dimension());
    for (std::size_t i = 0; i < fields.size(); ++i) h += coeffs[i] * fields[i]->hessian(j);
    sum += std::abs(minor_det(h, rows, cols));
  });
  return sum * first.spacing.prod();
}

MinorBound minor_difference_bound(const MaxAffine& g, const MaxAffine& h, const Box& k, int order, double epsilon,
                                  int points_per_eps) {
  if (g.dimension != k.dimension() || h.dimension != k.dimension())
    throw InputError("function and box dimensions differ");
  const MollifiedField fg = mollify(g, k, epsilon, points_per_eps);
  const MollifiedField fh = mollify(h, k, epsilon, points_per_eps);
  return bound_from_fields(fg, fh, order);
}

bool LadderReport::bounded(double tolerance) const {
  return std::all_of(spread.begin(), spread.end(), [&](double s) { return s < tolerance; });
}

bool LadderReport::inequalities_hold() const {
  for (const auto& rung : rungs)
    for (const auto& b : rung.bounds)
      if (!b.holds) return false;
  return true;
}

LadderReport approximation_ladder(const DCFunction& f, const Box& k, const std::vector<double>& epsilons,
                                  int points_per_eps) {
  if (f.dimension() != k.dimension()) throw InputError("function and box dimensions differ");
  const int d = k.dimension();
  LadderReport report;
  for (double eps : epsilons) {
    const MollifiedField fg = mollify(f.plus, k, eps, points_per_eps);
    const MollifiedField fh = mollify(f.minus, k, eps, points_per_eps);
    LadderRung rung;
    rung.epsilon = eps;
    for (int m = 1; m <= d; ++m) rung.bounds.push_back(bound_from_fields(fg, fh, m));
    report.rungs.push_back(std::move(rung));
  }
  report.spread.assign(static_cast<std::size_t>(d), 0.0);
  for (int m = 0; m < d; ++m) {
    const auto um = static_cast<std::size_t>(m);
    for (std::size_t a = 0; a < report.rungs.size(); ++a)
      for (std::size_t b = a + 1; b < report.rungs.size(); ++b) {
        const double x = report.rungs[a].bounds[um].lhs;
        const double y = report.rungs[b].bounds[um].lhs;
        const double top = std::max(x, y);
        if (top > 0.0) report.spread[um] = std::max(report.spread[um], std::abs(x - y) / top);
      }
  }
  return report;
}

Measure hull_volume(const std::vector<QVector>& points) {
  if (points.empty()) return Measure{0.0, Rational(0)};
  const auto d = points.front().size();
  if (affine_dimension(points) < d) return Measure{0.0, Rational(0)};
  QMatrix rows(static_cast<Eigen::Index>(points.size()), d + 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i)).head(d) = points[i].transpose();
    rows(static_cast<Eigen::Index>(i), d) = 1;
  }
  // Rays (c, c0) of the polar cone are the facet inequalities c . x <= -c0.
  const ConeGenerators polar = cone_generators(rows);
  ConvexPolytope hull;
  hull.dimension = static_cast<int>(d);
  for (const auto& ray : polar.rays) {
    QVector c = ray.head(d);
    if (is_zero(c)) continue;
    hull.constraints.push_back(make_halfspace(c, -ray(d)));
  }
  return hausdorff_measure(hull, static_cast<int>(d));
}

MongeAmpereMass monge_ampere_mass(const MaxAffine& g, const QVector& lo, const QVector& hi) {
  const int d = g.dimension;
  if (lo.size() != d || hi.size() != d) throw InputError("box and function dimensions differ");
  const MaxAffine f = canonical(g);
  const ConvexPolytope box = make_box(lo, hi);
  std::set<QVector, LexLess> found;
  for (std::size_t i = 0; i < f.pieces.size(); ++i) {
    ConvexPolytope region = box;
    for (std::size_t k = 0; k < f.pieces.size(); ++k) {
      if (k == i) continue;
      region.constraints.push_back(
          make_halfspace(f.pieces[k].gradient - f.pieces[i].gradient, f.pieces[i].offset - f.pieces[k].offset));
    }
    if (!feasible(region)) continue;
    for (const auto& v : vertices(region)) found.insert(v);
  }

  MongeAmpereMass out;
  Rational exact = 0;
  bool all_exact = true;
  for (const auto& v : found) {
    Rational best = f.pieces.front()(v);
    for (const auto& p : f.pieces) best = std::max(best, p(v));
    std::vector<QVector> gradients;
    for (const auto& p : f.pieces)
      if (p(v) == best) gradients.push_back(p.gradient);
    if (affine_dimension(gradients) < d) continue;
    ++out.vertices;
    const Measure m = hull_volume(gradients);
    out.mass += m.value;
    if (m.exact)
      exact += *m.exact;
    else
      all_exact = false;
  }
  if (all_exact) {
    out.exact = exact;
    out.mass = to_double(exact);
  }
  return out;
}

}  // namespace curvkit
