// Copyright 2026 The Regolith Authors.
//
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

#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "regolith/core.hpp"

namespace regolith {

/// Reads optional members of one JSON object, collecting every bad or unknown
/// key so a caller sees all field errors at once.
class FieldReader {
 public:
  FieldReader(const nlohmann::json& j, std::string prefix, std::vector<std::string>& bad)
      : j_(j), prefix_(std::move(prefix)), bad_(bad) {
    if (!j_.is_object()) bad_.push_back(prefix_.empty() ? "<root>" : prefix_);
  }

  void number(const char* key, double& out) {
    seen_.insert(key);
    if (!j_.is_object() || !j_.contains(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      bad_.push_back(path(key));
      return;
    }
    out = v.get<double>();
  }

  void degrees(const char* key, double& out_rad) {
    double deg = rad_to_deg(out_rad);
    const bool present = j_.is_object() && j_.contains(key);
    number(key, deg);
    if (present) out_rad = deg_to_rad(deg);
  }

  void boolean(const char* key, bool& out) {
    seen_.insert(key);
    if (!j_.is_object() || !j_.contains(key)) return;
    if (!j_.at(key).is_boolean()) {
      bad_.push_back(path(key));
      return;
    }
    out = j_.at(key).get<bool>();
  }

  void integer(const char* key, int& out) {
    seen_.insert(key);
    if (!j_.is_object() || !j_.contains(key)) return;
    if (!j_.at(key).is_number_integer()) {
      bad_.push_back(path(key));
      return;
    }
    out = j_.at(key).get<int>();
  }

  void seed(const char* key, std::uint64_t& out) {
    seen_.insert(key);
    if (!j_.is_object() || !j_.contains(key)) return;
    const auto& v = j_.at(key);
    if (v.is_number_unsigned()) {
      out = v.get<std::uint64_t>();
    } else if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      out = static_cast<std::uint64_t>(v.get<std::int64_t>());
    } else {
      bad_.push_back(path(key));
    }
  }

  void text(const char* key, std::string& out) {
    seen_.insert(key);
    if (!j_.is_object() || !j_.contains(key)) return;
    if (!j_.at(key).is_string()) {
      bad_.push_back(path(key));
      return;
    }
    out = j_.at(key).get<std::string>();
  }

  /// Marks a key as handled elsewhere; returns it when present.
  const nlohmann::json* child(const char* key) {
    seen_.insert(key);
    if (!j_.is_object() || !j_.contains(key)) return nullptr;
    return &j_.at(key);
  }

  std::string path(const std::string& key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

  /// Flags keys nobody asked for.
  void reject_unknown() {
    if (!j_.is_object()) return;
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) bad_.push_back(path(it.key()));
    }
  }

 private:
  const nlohmann::json& j_;
  std::string prefix_;
  std::vector<std::string>& bad_;
  std::set<std::string> seen_;
};

/// Shortest decimal that round-trips a double, for CSV cells.
inline std::string format_number(double v) {
  char buf[32];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline nlohmann::json error_json(const std::exception& e) {
  nlohmann::json err{{"message", e.what()}};
  if (const auto* re = dynamic_cast<const Error*>(&e)) {
    err["kind"] = std::string(to_string(re->kind()));
    err["fields"] = re->fields();
  } else {
    err["kind"] = "internal";
    err["fields"] = nlohmann::json::array();
  }
  return nlohmann::json{{"schema_version", kSchemaVersion}, {"error", err}};
}

}  // namespace regolith
