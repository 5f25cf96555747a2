// Copyright 2026 The EdgeMORE Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON file formats for scenarios, allocations and solve reports.
//
// Scenario (version 1):
//   {"version": 1,
//    "resource_types": [{"name": "cpu", "unit": "core-time"}, ...],
//    "nodes": [{"id": 1, "capacities": [16, 32]}, ...],
//    "providers": [{"id": 1, "options": [{"id": 1, "utility": 0.4,
//        "containers": [{"id": 1, "demands": [0.5, 1.1]}, ...]}, ...]}, ...],
//    "generator": {...}}            // optional provenance block
//
// Allocation:
//   {"choices": [{"provider": 1, "option": 2}, ...],
//    "placements": [{"provider": 1, "option": 2, "container": 1,
//                    "node": 3}, ...]}
//
// Doubles are written with round-trip precision.

#ifndef EDGEMORE_IO_HPP_
#define EDGEMORE_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "edgemore/generator.hpp"
#include "edgemore/model.hpp"

namespace edgemore {

inline constexpr int kScenarioFormatVersion = 1;

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// A file was readable but does not follow the expected format.
class SchemaError : public Error {
 public:
  using Error::Error;
};

nlohmann::json params_to_json(const GenParams& params);

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);

nlohmann::json allocation_to_json(const Allocation& alloc);
Allocation allocation_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const SolveReport& report);

// Adds a "generator" block with the parameters, seed and PRNG name when
// params is given.
void write_scenario(const std::filesystem::path& path, const Scenario& scenario,
                    const GenParams* params = nullptr);
Scenario read_scenario(const std::filesystem::path& path);

// The allocation file carries the solver name and objective from the report
// but no timing, so repeated runs produce identical files.
void write_allocation(const std::filesystem::path& path,
                      const Allocation& alloc, const SolveReport& report);
Allocation read_allocation(const std::filesystem::path& path);

void write_report(const std::filesystem::path& path, const SolveReport& report);

// Whole-file helpers; throw IoError.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace edgemore

#endif  // EDGEMORE_IO_HPP_
