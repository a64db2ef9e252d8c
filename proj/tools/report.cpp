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

#include "curvkit/cli/report.hpp"

#include <algorithm>
#include <sstream>

namespace curvkit::cli {

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json out;
  out["command"] = command;
  out["arguments"] = arguments;
  out["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  nlohmann::json results = nlohmann::json::array();
  for (const auto& c : checks)
    results.push_back({{"name", c.name},
                       {"computed", c.computed},
                       {"reference", c.reference},
                       {"tolerance", c.tolerance},
                       {"provenance", c.provenance},
                       {"pass", c.pass}});
  out["results"] = results;
  out["data"] = data;
  out["status"] = passed() ? "pass" : "fail";
  out["timings"] = {{"seconds", seconds}};
  return out;
}

std::string Report::summary() const {
  std::ostringstream s;
  const auto ok = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  s << command << ": " << (passed() ? "PASS" : "FAIL") << " (" << ok << "/" << checks.size() << " checks, "
    << seconds << " s)\n";
  for (const auto& c : checks)
    s << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << ": computed " << c.computed.dump() << ", reference "
      << c.reference.dump() << ", tolerance " << c.tolerance << "\n";
  return s.str();
}

}  // namespace curvkit::cli
