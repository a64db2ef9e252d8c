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

#include <chrono>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "curvkit/cli/commands.hpp"

namespace {

using curvkit::cli::Report;

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw curvkit::InputError("bad eps ladder entry '" + item + "'");
    out.push_back(value);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature measures and normal-cycle checks for finite unions of convex polytopes"};
  app.require_subcommand(1);

  std::string scene_path;
  std::uint64_t seed = 0;

  auto* curvature = app.add_subcommand("curvature", "Total or localized curvature measures C_0..C_d");
  std::string window;
  curvature->add_option("scene", scene_path, "Scene file")->required();
  curvature->add_option("--window", window, "Halfspaces n1,...,nd:b separated by ';'");
  curvature->add_option("--seed", seed, "Seed for Monte Carlo angles");

  auto* gauss_bonnet = app.add_subcommand("gauss-bonnet", "Slice identity on random halfspaces");
  curvkit::cli::GaussBonnetOptions gb;
  std::vector<std::string> halfspaces;
  gauss_bonnet->add_option("scene", scene_path, "Scene file")->required();
  gauss_bonnet->add_option("--samples", gb.samples, "Number of random halfspaces");
  gauss_bonnet->add_option("--seed", seed, "Seed");
  gauss_bonnet->add_option("--halfspace", halfspaces, "Extra halfspace n1,...,nd:t (repeatable)");

  auto* crofton = app.add_subcommand("crofton", "Monte Carlo Crofton estimate");
  curvkit::cli::CroftonOptions cr;
  crofton->add_option("scene", scene_path, "Scene file")->required();
  crofton->add_option("--k", cr.k, "Curvature index on the flats");
  crofton->add_option("--m", cr.m, "Flat dimension");
  crofton->add_option("--samples", cr.samples, "Number of flats");
  crofton->add_option("--seed", seed, "Seed");

  auto* detlemma = app.add_subcommand("detlemma", "Determinant identity on random rational matrices");
  curvkit::cli::DetLemmaOptions dl;
  detlemma->add_option("--dim", dl.dimension, "Matrix order");
  detlemma->add_option("--trials", dl.trials, "Number of matrix pairs");
  detlemma->add_option("--seed", seed, "Seed");
  detlemma->add_flag("--exact", dl.exact, "Rational arithmetic instead of doubles");

  auto* approx = app.add_subcommand("approx", "Minor integrals of mollified d.c. functions on an eps ladder");
  curvkit::cli::ApproxOptions ap;
  std::string ladder;
  approx->add_option("scene", scene_path, "Scene file with dc_functions and metadata.box")->required();
  approx->add_option("--eps-ladder", ladder, "Comma-separated mollifier radii");
  approx->add_option("--grid", ap.grid, "Lattice points per mollifier radius (>= 2)");
  approx->add_option("--function", ap.function, "Index into dc_functions");

  auto* index = app.add_subcommand("index", "Normal-cycle index at (x, n)");
  std::string point, normal;
  bool bruteforce = false;
  index->add_option("scene", scene_path, "Scene file")->required();
  index->add_option("--point", point, "Point x as comma-separated rationals")->required();
  index->add_option("--normal", normal, "Direction n as comma-separated rationals")->required();
  index->add_flag("--bruteforce", bruteforce, "Cross-check against the box-neighbourhood evaluation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Report report;
    if (curvature->parsed()) {
      curvkit::cli::CurvatureOptions opt;
      opt.seed = seed;
      if (!window.empty()) opt.window = curvkit::cli::parse_halfspace_list(window);
      report = curvkit::cli::run_curvature(curvkit::cli::load_scene(scene_path), opt);
    } else if (gauss_bonnet->parsed()) {
      gb.seed = seed;
      for (const auto& h : halfspaces) gb.extra.push_back(curvkit::cli::parse_halfspace(h));
      report = curvkit::cli::run_gauss_bonnet(curvkit::cli::load_scene(scene_path), gb);
    } else if (crofton->parsed()) {
      cr.seed = seed;
      report = curvkit::cli::run_crofton(curvkit::cli::load_scene(scene_path), cr);
    } else if (detlemma->parsed()) {
      dl.seed = seed;
      report = curvkit::cli::run_detlemma(dl);
    } else if (approx->parsed()) {
      if (!ladder.empty()) ap.ladder = parse_ladder(ladder);
      report = curvkit::cli::run_approx(curvkit::cli::load_scene(scene_path), ap);
    } else {
      curvkit::cli::IndexOptions opt;
      opt.point = curvkit::cli::parse_vector_list(point);
      opt.normal = curvkit::cli::parse_vector_list(normal);
      opt.bruteforce = bruteforce;
      report = curvkit::cli::run_index(curvkit::cli::load_scene(scene_path), opt);
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << report.to_json().dump(2) << "\n";
    std::cerr << report.summary();
    return report.passed() ? 0 : 1;
  } catch (const curvkit::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const curvkit::GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return 3;
  }
}
