// Copyright 2026 The symtest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Minimal draft-07 validator covering the keywords used by
// schema/report.schema.json: type, enum, required, properties,
// additionalProperties (bool), items, minItems, maxItems, minimum, maximum,
// oneOf, allOf and local $ref.

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace symtest::testing {

class SchemaCheck {
 public:
  using Json = nlohmann::json;

  explicit SchemaCheck(Json schema) : root_(std::move(schema)) {}

  static SchemaCheck from_file(const std::string& path) {
    std::ifstream f(path);
    return SchemaCheck(Json::parse(f));
  }

  /// Empty on success, otherwise the first few violations.
  std::vector<std::string> validate(const Json& doc) const {
    std::vector<std::string> errors;
    check(root_, doc, "$", errors);
    return errors;
  }

 private:
  const Json& resolve(const Json& schema) const {
    if (!schema.contains("$ref")) return schema;
    const std::string ref = schema["$ref"];
    if (ref.rfind("#/", 0) != 0) throw std::runtime_error("unsupported $ref " + ref);
    return root_.at(Json::json_pointer(ref.substr(1)));
  }

  static bool type_matches(const std::string& type, const Json& v) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    if (type == "number") return v.is_number();
    if (type == "integer") {
      if (v.is_number_integer()) return true;
      return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
    }
    return false;
  }

  void check(const Json& raw, const Json& v, const std::string& path, std::vector<std::string>& errors) const {
    const Json& s = resolve(raw);
    if (s.is_boolean()) {
      if (!s.get<bool>()) errors.push_back(path + ": schema false");
      return;
    }
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_string()) {
        ok = type_matches(s["type"], v);
      } else {
        for (const auto& t : s["type"]) ok = ok || type_matches(t, v);
      }
      if (!ok) {
        errors.push_back(path + ": type mismatch, expected " + s["type"].dump());
        return;
      }
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) errors.push_back(path + ": value " + v.dump() + " not in enum");
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (s.contains("minimum") && x < s["minimum"].get<double>()) errors.push_back(path + ": below minimum");
      if (s.contains("maximum") && x > s["maximum"].get<double>()) errors.push_back(path + ": above maximum");
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) {
        errors.push_back(path + ": too few items");
      }
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) {
        errors.push_back(path + ": too many items");
      }
      if (s.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) check(s["items"], v[i], path + "[" + std::to_string(i) + "]", errors);
      }
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& key : s["required"]) {
          if (!v.contains(key.get<std::string>())) errors.push_back(path + ": missing '" + key.get<std::string>() + "'");
        }
      }
      const Json empty = Json::object();
      const Json& props = s.contains("properties") ? s["properties"] : empty;
      for (const auto& [key, value] : v.items()) {
        if (props.contains(key)) {
          check(props[key], value, path + "." + key, errors);
        } else if (s.contains("additionalProperties") && s["additionalProperties"].is_boolean() &&
                   !s["additionalProperties"].get<bool>()) {
          errors.push_back(path + ": unexpected property '" + key + "'");
        }
      }
    }
    if (s.contains("allOf")) {
      for (const auto& sub : s["allOf"]) check(sub, v, path, errors);
    }
    if (s.contains("oneOf")) {
      int matches = 0;
      std::vector<std::string> first_errors;
      for (const auto& sub : s["oneOf"]) {
        std::vector<std::string> sub_errors;
        check(sub, v, path, sub_errors);
        if (sub_errors.empty()) {
          ++matches;
        } else if (first_errors.empty() || sub_errors.size() < first_errors.size()) {
          first_errors = sub_errors;
        }
      }
      if (matches != 1) {
        errors.push_back(path + ": matched " + std::to_string(matches) + " oneOf branches");
        if (matches == 0) errors.insert(errors.end(), first_errors.begin(), first_errors.end());
      }
    }
  }

  Json root_;
};

}  // namespace symtest::testing
