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

#include "curvkit/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "curvkit/approx.hpp"
#include "curvkit/crofton.hpp"
#include "curvkit/curvature.hpp"
#include "curvkit/ncycle.hpp"
#include "curvkit/random.hpp"

namespace curvkit::cli {

namespace {

std::uint64_t id(Stream s) { return static_cast<std::uint64_t>(s); }

void require_polytopes(const Scene& scene) {
  if (scene.set.parts.empty()) throw InputError("scene has no polytopes");
}

nlohmann::json halfspace_json(const Halfspace& h) { return {{"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}}; }

nlohmann::json halfspaces_json(const std::vector<Halfspace>& hs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& h : hs) out.push_back(halfspace_json(h));
  return out;
}

nlohmann::json curvature_json(const CurvatureVector& c) {
  nlohmann::json out = nlohmann::json::array();
  for (int k = 0; k <= c.dimension(); ++k) {
    const auto uk = static_cast<std::size_t>(k);
    out.push_back({{"k", k},
                   {"value", c.value(k)},
                   {"error", c.error(k)},
                   {"exact", c.exact[uk] ? to_json(*c.exact[uk]) : nlohmann::json(nullptr)}});
  }
  return out;
}

}  // namespace

Report run_curvature(const Scene& scene, const CurvatureOptions& options) {
  require_polytopes(scene);
  Report report;
  report.command = "curvature";
  report.seed = options.seed;
  AngleOptions angles;
  angles.seed = options.seed;
  angles.stream = id(Stream::curvature);

  if (options.window) {
    ConvexPolytope window;
    window.dimension = scene.dimension;
    for (const auto& h : *options.window) {
      if (h.normal.size() != scene.dimension) throw InputError("window halfspace dimension does not match the scene");
      window.constraints.push_back(h);
    }
    report.arguments["window"] = halfspaces_json(*options.window);
    report.data["curvature"] = curvature_json(curvature_localized(scene.set, window, angles));
    report.data["localized"] = true;
    return report;
  }

  const CurvatureVector c = curvature_union(scene.set, angles);
  report.data["curvature"] = curvature_json(c);
  report.data["localized"] = false;
  const int chi = euler(scene.set);
  Check gb;
  gb.name = "gauss_bonnet";
  gb.reference = chi;
  gb.provenance = "Euler characteristic by nerve inclusion-exclusion";
  if (c.exact[0]) {
    gb.computed = to_json(*c.exact[0]);
    gb.pass = *c.exact[0] == chi;
  } else {
    gb.computed = c.value(0);
    gb.tolerance = c.error(0);
    gb.pass = std::abs(c.value(0) - chi) <= c.error(0);
  }
  report.checks.push_back(gb);
  return report;
}

Report run_gauss_bonnet(const Scene& scene, const GaussBonnetOptions& options) {
  require_polytopes(scene);
  Report report;
  report.command = "gauss-bonnet";
  report.seed = options.seed;
  report.arguments["samples"] = options.samples;
  report.arguments["halfspaces"] = halfspaces_json(options.extra);

  const SliceEvaluator eval(scene.set);
  std::size_t checked = 0, agreed = 0, degenerate = 0;
  nlohmann::json mismatches = nlohmann::json::array();
  auto record = [&](const SliceReport& r) {
    ++checked;
    if (r.sum == r.euler) {
      ++agreed;
    } else if (mismatches.size() < 10) {
      mismatches.push_back({{"direction", to_json(r.direction)},
                            {"threshold", to_json(r.threshold)},
                            {"sum", r.sum},
                            {"euler", r.euler}});
    }
  };
  for (std::size_t i = 0; i < options.samples; ++i) {
    Rng rng = make_rng(options.seed, id(Stream::gauss_bonnet), i);
    const auto [v, t] = random_halfspace(eval, rng);
    const SliceReport r = eval.slice(v, t);
    if (r.degenerate) {
      ++degenerate;
      continue;
    }
    record(r);
  }
  nlohmann::json extra = nlohmann::json::array();
  for (const auto& h : options.extra) {
    if (h.normal.size() != scene.dimension) throw InputError("halfspace dimension does not match the scene");
    const SliceReport r = eval.slice(h.normal, h.offset);
    const bool skip = r.degenerate || eval.touching(h.normal, h.offset);
    nlohmann::json entry = halfspace_json(h);
    entry["degenerate"] = skip;
    if (!skip) {
      entry["sum"] = r.sum;
      entry["euler"] = r.euler;
      record(r);
    }
    extra.push_back(entry);
  }

  report.data["samples"] = options.samples;
  report.data["degenerate"] = degenerate;
  report.data["checked"] = checked;
  report.data["mismatches"] = mismatches;
  report.data["halfspaces"] = extra;

  Check identity;
  identity.name = "slice_identity";
  identity.computed = agreed;
  identity.reference = checked;
  identity.provenance = "exact Euler characteristic of each slice";
  identity.pass = agreed == checked;
  report.checks.push_back(identity);

  Check rate;
  rate.name = "degenerate_rate";
  rate.computed = options.samples == 0 ? 0.0 : static_cast<double>(degenerate) / static_cast<double>(options.samples);
  rate.reference = 0.0;
  rate.tolerance = 0.01;
  rate.provenance = "acceptance threshold";
  rate.pass = rate.computed.get<double>() < rate.tolerance;
  report.checks.push_back(rate);
  return report;
}

Report run_crofton(const Scene& scene, const CroftonOptions& options) {
  require_polytopes(scene);
  const int d = scene.dimension;
  if (options.k < 0 || options.k > options.m || options.m > d)
    throw InputError("crofton needs 0 <= k <= m <= d");
  if (options.samples == 0) throw InputError("crofton needs at least one sample");
  Report report;
  report.command = "crofton";
  report.seed = options.seed;
  report.arguments = {{"k", options.k}, {"m", options.m}, {"samples", options.samples}};

  const CroftonEstimate est =
      crofton_estimate(scene.set, options.k, options.m, options.samples, 0.0, options.seed, id(Stream::crofton));
  report.data = {{"mean", est.mean},
                 {"standard_error", est.standard_error},
                 {"samples", est.samples},
                 {"rejected", est.rejected},
                 {"radius", est.radius},
                 {"reference", est.reference}};
  Check c;
  c.name = "crofton";
  c.computed = est.mean;
  c.reference = est.reference;
  c.tolerance = 3.0 * est.standard_error;
  c.provenance = "beta constant times the curvature of the scene";
  c.pass = est.agrees(3.0, 0.03);
  report.checks.push_back(c);
  return report;
}

Report run_detlemma(const DetLemmaOptions& options) {
  if (options.dimension < 1) throw InputError("detlemma needs --dim >= 1");
  Report report;
  report.command = "detlemma";
  report.seed = options.seed;
  report.arguments = {{"dim", options.dimension}, {"trials", options.trials}, {"exact", options.exact}};
  const int n = options.dimension;
  std::size_t passed = 0;
  double worst = 0.0;
  for (std::size_t t = 0; t < options.trials; ++t) {
    Rng rng = make_rng(options.seed, id(Stream::detlemma), t);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    QMatrix a(n, n), b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rationalize(entry(rng), 16);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = rationalize(entry(rng), 16);
    if (options.exact) {
      const auto [lhs, rhs] = det_identity_check<Rational>(a, b);
      if (lhs == rhs) ++passed;
    } else {
      const auto [lhs, rhs] = det_identity_check<double>(to_double(a), to_double(b));
      const double err = std::abs(lhs - rhs);
      worst = std::max(worst, err / (1.0 + std::abs(lhs)));
      if (err <= 1e-8 * (1.0 + std::abs(lhs))) ++passed;
    }
  }
  report.data = {{"trials", options.trials}, {"passed", passed}};
  if (!options.exact) report.data["max_relative_error"] = worst;
  Check c;
  c.name = "determinant_identity";
  c.computed = passed;
  c.reference = options.trials;
  c.tolerance = options.exact ? 0.0 : 1e-8;
  c.provenance = "exact polynomial identity";
  c.pass = passed == options.trials;
  report.checks.push_back(c);
  return report;
}

Report run_approx(const Scene& scene, const ApproxOptions& options) {
  if (options.function >= scene.functions.size()) throw InputError("scene has no dc_function with that index");
  const auto corners = scene.box();
  if (!corners) throw InputError("approx needs metadata.box in the scene");
  if (options.ladder.empty()) throw InputError("empty eps ladder");
  for (double e : options.ladder)
    if (!(e > 0.0)) throw InputError("eps ladder entries must be positive");
  Report report;
  report.command = "approx";
  report.arguments = {{"eps_ladder", options.ladder}, {"grid", options.grid}, {"function", options.function}};

  const Box k{to_double(corners->first), to_double(corners->second)};
  const LadderReport ladder = approximation_ladder(scene.functions[options.function], k, options.ladder, options.grid);
  nlohmann::json rungs = nlohmann::json::array();
  for (const auto& rung : ladder.rungs) {
    nlohmann::json bounds = nlohmann::json::array();
    for (const auto& b : rung.bounds)
      bounds.push_back({{"order", b.order},
                        {"lhs", b.lhs},
                        {"rhs", b.rhs},
                        {"slack", b.slack},
                        {"rows", b.rows},
                        {"cols", b.cols},
                        {"holds", b.holds}});
    rungs.push_back({{"epsilon", rung.epsilon}, {"bounds", bounds}});
  }
  report.data["rungs"] = rungs;

  for (int m = 1; m <= k.dimension(); ++m) {
    const auto um = static_cast<std::size_t>(m - 1);
    Check spread;
    spread.name = "ladder_spread_order_" + std::to_string(m);
    spread.computed = ladder.spread[um];
    spread.reference = 0.0;
    spread.tolerance = 0.1;
    spread.provenance = "uniform bound across the ladder";
    spread.pass = ladder.spread[um] < 0.1;
    report.checks.push_back(spread);

    Check bound;
    bound.name = "minor_bound_order_" + std::to_string(m);
    double excess = -INFINITY, slack = 0.0;
    bool holds = true;
    for (const auto& rung : ladder.rungs) {
      const auto& b = rung.bounds[um];
      excess = std::max(excess, b.lhs - b.rhs);
      slack = std::max(slack, b.slack);
      holds = holds && b.holds;
    }
    bound.computed = excess;
    bound.reference = 0.0;
    bound.tolerance = slack;
    bound.provenance = "lhs - rhs of the minor inequality, worst rung";
    bound.pass = holds;
    report.checks.push_back(bound);
  }
  return report;
}

Report run_index(const Scene& scene, const IndexOptions& options) {
  require_polytopes(scene);
  if (options.point.size() != scene.dimension || options.normal.size() != scene.dimension)
    throw InputError("point and normal must match the scene dimension");
  if (is_zero(options.normal)) throw InputError("normal must be nonzero");
  Report report;
  report.command = "index";
  report.arguments = {{"point", to_json(options.point)}, {"normal", to_json(options.normal)},
                      {"bruteforce", options.bruteforce}};
  const NormalQuery q{options.point, options.normal};
  const IndexValue iv = index(scene.set, q);
  report.data = {{"value", iv.value}, {"degenerate", iv.degenerate}, {"in_set", contains(scene.set, options.point)}};
  if (!options.bruteforce) return report;
  if (iv.degenerate) {
    report.data["bruteforce"] = "skipped: degenerate query";
    return report;
  }
  const Rational r = local_radius(scene.set, options.point);
  const Rational delta = r / Rational(1 << 20);
  const int brute = index_bruteforce(scene.set, q, r, delta);
  report.data["radius"] = to_json(r);
  report.data["delta"] = to_json(delta);
  Check c;
  c.name = "bruteforce";
  c.computed = iv.value;
  c.reference = brute;
  c.provenance = "Euler characteristics of the box neighbourhood slices";
  c.pass = iv.value == brute;
  report.checks.push_back(c);
  return report;
}

}  // namespace curvkit::cli
