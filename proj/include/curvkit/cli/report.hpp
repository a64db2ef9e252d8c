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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace curvkit::cli {

struct Check {
  std::string name;
  nlohmann::json computed;
  nlohmann::json reference;
  double tolerance = 0.0;
  std::string provenance;  // where the reference value comes from
  bool pass = false;
};

struct Report {
  std::string command;
  nlohmann::json arguments = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::vector<Check> checks;
  nlohmann::json data = nlohmann::json::object();
  double seconds = 0.0;

  bool passed() const;
  /// Everything except "timings" is a function of the inputs and the seed.
  nlohmann::json to_json() const;
  std::string summary() const;
};

}  // namespace curvkit::cli
