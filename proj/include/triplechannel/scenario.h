// Copyright 2026 The triplechannel Authors
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

// Scenario files: JSON objects holding the eleven market parameters by
// name, an optional "prices" block and optional "label"/"notes" strings.
//
//   {
//     "label": "base case",
//     "alpha": 0.9, "theta": 0.6, "beta": 1, "m": 1, "t": 10, "x": 0.86,
//     "mu1": 20, "mu2": 20, "c1": 175, "c2": 140, "c3": 140,
//     "prices": {"p1": 158.26, "p2": 149.56, "p3": 110.87}
//   }

#ifndef TRIPLECHANNEL_SCENARIO_H_
#define TRIPLECHANNEL_SCENARIO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "triplechannel/market_model.h"

namespace triplechannel {

struct Scenario {
  MarketParams params;
  std::optional<PriceVector> prices;
  std::string label;
  std::string notes;
};

// Throws ModelError with kMissingField, kTypeError, or (strict only)
// kUnknownField. In permissive mode unknown fields are appended to
// `warnings` when it is non-null.
Scenario scenario_from_json(const nlohmann::json& doc, bool strict,
                            std::vector<std::string>* warnings = nullptr);

// As above, reading from disk; kIo if the file cannot be read and
// kTypeError if it is not valid JSON.
Scenario parse_scenario(const std::filesystem::path& path, bool strict,
                        std::vector<std::string>* warnings = nullptr);

nlohmann::json to_json(const Scenario& scenario);
void write_scenario(const Scenario& scenario,
                    const std::filesystem::path& path);

// 64-bit FNV-1a of the canonical JSON form of the parameters, as 16 hex
// digits. Insensitive to key order and whitespace in the source file.
std::string scenario_hash(const MarketParams& params);

}  // namespace triplechannel

#endif  // TRIPLECHANNEL_SCENARIO_H_
