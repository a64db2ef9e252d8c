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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "curvkit/dcfun.hpp"
#include "curvkit/polyhedra.hpp"

namespace curvkit::cli {

/// A scene file: polytopes given by halfspaces, optional d.c. functions, and
/// free-form metadata. Rationals are JSON strings ("p/q", "p", or a finite
/// decimal) or JSON integers; JSON floating-point numbers are rejected.
struct Scene {
  int dimension = 0;
  PolyUnion set;
  std::vector<DCFunction> functions;
  nlohmann::json metadata = nlohmann::json::object();

  /// metadata.box as {lo: [...], hi: [...]}, when present.
  std::optional<std::pair<QVector, QVector>> box() const;
};

Rational parse_json_rational(const nlohmann::json& value);
QVector parse_json_vector(const nlohmann::json& value, int dimension);

/// Throws InputError on malformed input, including a scene with neither
/// polytopes nor functions; GeometryError when a polytope is unbounded.
Scene parse_scene(const nlohmann::json& document);
Scene parse_scene_text(const std::string& text);
Scene load_scene(const std::string& path);

/// Comma-separated rationals, e.g. "1,-1/2,0.25".
QVector parse_vector_list(const std::string& text);
/// "n1,...,nd:offset", the halfspace n.x <= offset.
Halfspace parse_halfspace(const std::string& text);
/// Semicolon-separated halfspaces.
std::vector<Halfspace> parse_halfspace_list(const std::string& text);

nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const QVector& v);

}  // namespace curvkit::cli
