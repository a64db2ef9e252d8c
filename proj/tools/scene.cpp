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

#include "curvkit/cli/scene.hpp"

#include <fstream>
#include <sstream>

namespace curvkit::cli {

namespace {

const nlohmann::json& field(const nlohmann::json& object, const char* key, const std::string& where) {
  if (!object.is_object() || !object.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return object.at(key);
}

MaxAffine parse_pieces(const nlohmann::json& value, int d, const std::string& where) {
  if (!value.is_array() || value.empty()) throw InputError(where + ": expected a nonempty list of pieces");
  std::vector<AffinePiece> pieces;
  for (const auto& p : value)
    pieces.push_back({parse_json_vector(field(p, "gradient", where), d), parse_json_rational(field(p, "offset", where))});
  return make_max_affine(d, std::move(pieces));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

}  // namespace

Rational parse_json_rational(const nlohmann::json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return Rational(value.get<std::uint64_t>());
    return Rational(value.get<std::int64_t>());
  }
  if (value.is_number_float())
    throw InputError("floating-point JSON number " + value.dump() + "; write rationals as strings such as \"1/3\"");
  throw InputError("expected a rational, got " + value.dump());
}

QVector parse_json_vector(const nlohmann::json& value, int dimension) {
  if (!value.is_array()) throw InputError("expected a list of rationals, got " + value.dump());
  if (static_cast<int>(value.size()) != dimension)
    throw InputError("expected " + std::to_string(dimension) + " coordinates, got " + std::to_string(value.size()));
  QVector v(dimension);
  for (int i = 0; i < dimension; ++i) v(i) = parse_json_rational(value[static_cast<std::size_t>(i)]);
  return v;
}

std::optional<std::pair<QVector, QVector>> Scene::box() const {
  if (!metadata.is_object() || !metadata.contains("box")) return std::nullopt;
  const auto& b = metadata.at("box");
  return std::make_pair(parse_json_vector(field(b, "lo", "metadata.box"), dimension),
                        parse_json_vector(field(b, "hi", "metadata.box"), dimension));
}

Scene parse_scene(const nlohmann::json& document) {
  if (!document.is_object()) throw InputError("scene must be a JSON object");
  const auto& dim = field(document, "dimension", "scene");
  if (!dim.is_number_integer() || dim.get<int>() < 1) throw InputError("scene dimension must be a positive integer");
  Scene scene;
  scene.dimension = dim.get<int>();
  const int d = scene.dimension;

  std::vector<ConvexPolytope> parts;
  if (document.contains("polytopes")) {
    const auto& list = document.at("polytopes");
    if (!list.is_array()) throw InputError("\"polytopes\" must be a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "polytope " + std::to_string(i);
      const auto& hs = field(list[i], "halfspaces", where);
      if (!hs.is_array() || hs.empty()) throw InputError(where + ": expected a nonempty list of halfspaces");
      ConvexPolytope p;
      p.dimension = d;
      for (const auto& h : hs)
        p.constraints.push_back(make_halfspace(parse_json_vector(field(h, "normal", where), d),
                                               parse_json_rational(field(h, "offset", where))));
      parts.push_back(std::move(p));
    }
  }
  if (document.contains("dc_functions")) {
    const auto& list = document.at("dc_functions");
    if (!list.is_array()) throw InputError("\"dc_functions\" must be a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "dc_function " + std::to_string(i);
      MaxAffine plus = parse_pieces(field(list[i], "plus", where), d, where);
      if (list[i].contains("minus"))
        scene.functions.push_back(make_dc(std::move(plus), parse_pieces(list[i].at("minus"), d, where)));
      else
        scene.functions.push_back(make_dc(std::move(plus)));
    }
  }
  if (parts.empty() && scene.functions.empty()) throw InputError("scene has neither polytopes nor dc_functions");
  if (document.contains("metadata")) scene.metadata = document.at("metadata");
  scene.set = make_union(d, std::move(parts));
  if (scene.box()) {
    const auto [lo, hi] = *scene.box();
    for (int i = 0; i < d; ++i)
      if (!(lo(i) < hi(i))) throw InputError("metadata.box needs lo < hi on every axis");
  }
  return scene;
}

Scene parse_scene_text(const std::string& text) {
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("scene is not valid JSON: ") + e.what());
  }
  try {
    return parse_scene(document);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed scene: ") + e.what());
  }
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read scene file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scene_text(text.str());
}

QVector parse_vector_list(const std::string& text) {
  const auto items = split(text, ',');
  if (items.empty()) throw InputError("empty coordinate list");
  QVector v(static_cast<Eigen::Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_rational(trim(items[i]));
  return v;
}

Halfspace parse_halfspace(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("halfspace '" + text + "' must read normal:offset");
  return make_halfspace(parse_vector_list(text.substr(0, colon)), parse_rational(trim(text.substr(colon + 1))));
}

std::vector<Halfspace> parse_halfspace_list(const std::string& text) {
  std::vector<Halfspace> out;
  for (const auto& item : split(text, ';'))
    if (!trim(item).empty()) out.push_back(parse_halfspace(item));
  if (out.empty()) throw InputError("empty halfspace list");
  return out;
}

nlohmann::json to_json(const Rational& q) { return format_rational(q); }

nlohmann::json to_json(const QVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(format_rational(v(i)));
  return out;
}

}  // namespace curvkit::cli
