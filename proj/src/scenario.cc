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

#include "triplechannel/scenario.h"

#include <cstdint>
#include <fstream>

#include <fmt/format.h>

#include "triplechannel/errors.h"

namespace triplechannel {
namespace {

using nlohmann::json;

double number_field(const json& obj, const std::string& key,
                    const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ModelError(ErrorKind::kMissingField, path,
                     "scenario is missing required field '" + path + "'");
  }
  if (!it->is_number()) {
    throw ModelError(ErrorKind::kTypeError, path,
                     "scenario field '" + path + "' must be a number, got " +
                         std::string(it->type_name()));
  }
  return it->get<double>();
}

std::string string_field(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) {
    throw ModelError(ErrorKind::kTypeError, key,
                     "scenario field '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

void unknown_field(const std::string& path, bool strict,
                   std::vector<std::string>* warnings) {
  if (strict) {
    throw ModelError(ErrorKind::kUnknownField, path,
                     "unknown scenario field '" + path + "'");
  }
  if (warnings) warnings->push_back("ignoring unknown field '" + path + "'");
}

}  // namespace

Scenario scenario_from_json(const json& doc, bool strict,
                            std::vector<std::string>* warnings) {
  if (!doc.is_object()) {
    throw ModelError(ErrorKind::kTypeError, "<document>",
                     "scenario must be a JSON object");
  }
  Scenario s;
  for (ParamId id : kAllParams) {
    const std::string name(to_string(id));
    s.params = with_param(s.params, id, number_field(doc, name, name));
  }
  s.label = string_field(doc, "label");
  s.notes = string_field(doc, "notes");

  if (const auto it = doc.find("prices"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) {
      throw ModelError(ErrorKind::kTypeError, "prices",
                       "scenario field 'prices' must be an object");
    }
    s.prices = PriceVector{number_field(*it, "p1", "prices.p1"),
                           number_field(*it, "p2", "prices.p2"),
                           number_field(*it, "p3", "prices.p3")};
    for (const auto& [key, value] : it->items()) {
      if (key != "p1" && key != "p2" && key != "p3") {
        unknown_field("prices." + key, strict, warnings);
      }
    }
  }

  for (const auto& [key, value] : doc.items()) {
    if (parse_param_id(key) || key == "prices" || key == "label" ||
        key == "notes") {
      continue;
    }
    unknown_field(key, strict, warnings);
  }
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path, bool strict,
                        std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) {
    throw ModelError(ErrorKind::kIo, path.string(),
                     "cannot read scenario file '" + path.string() + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelError(ErrorKind::kTypeError, "<document>",
                     "scenario file '" + path.string() +
                         "' is not valid JSON: " + e.what());
  }
  return scenario_from_json(doc, strict, warnings);
}

json to_json(const Scenario& s) {
  json doc = json::object();
  if (!s.label.empty()) doc["label"] = s.label;
  if (!s.notes.empty()) doc["notes"] = s.notes;
  for (ParamId id : kAllParams) {
    doc[std::string(to_string(id))] = get_param(s.params, id);
  }
  if (s.prices) {
    doc["prices"] = {{"p1", s.prices->p1},
                     {"p2", s.prices->p2},
                     {"p3", s.prices->p3}};
  }
  return doc;
}

void write_scenario(const Scenario& scenario,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ModelError(ErrorKind::kIo, path.string(),
                     "cannot write scenario file '" + path.string() + "'");
  }
  out << to_json(scenario).dump(2) << '\n';
}

std::string scenario_hash(const MarketParams& params) {
  json doc = json::object();
  for (ParamId id : kAllParams) {
    doc[std::string(to_string(id))] = get_param(params, id);
  }
  // nlohmann::json objects are key-sorted, so dump() is canonical.
  const std::string text = doc.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace triplechannel
