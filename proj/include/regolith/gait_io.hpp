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

// JSON documents for gaits and the preset catalog.

#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "regolith/core.hpp"
#include "regolith/gait.hpp"
#include "regolith/preset_data.hpp"

namespace regolith::gait {

using nlohmann::json;

namespace detail {

struct FieldSpec {
  const char* key;
  double WheelGaitParams::*member;
};

inline constexpr FieldSpec kWheelFields[] = {
    {"drive_spin_rad_s", &WheelGaitParams::drive_spin},
    {"sweep_amplitude_rad", &WheelGaitParams::sweep_amplitude},
    {"sweep_out_rate_rad_s", &WheelGaitParams::sweep_out_rate},
    {"sweep_in_rate_rad_s", &WheelGaitParams::sweep_in_rate},
    {"spin_during_sweep_out_rad_s", &WheelGaitParams::spin_during_sweep_out},
    {"spin_during_sweep_in_rad_s", &WheelGaitParams::spin_during_sweep_in},
    {"leg_extension_frac", &WheelGaitParams::leg_extension},
    {"sweep_in_lift_frac", &WheelGaitParams::sweep_in_lift},
    {"phase_offset_cycles", &WheelGaitParams::phase_offset},
};

}  // namespace detail

inline json wheel_to_json(const WheelGaitParams& p) {
  json j = json::object();
  for (const auto& f : detail::kWheelFields) j[f.key] = p.*(f.member);
  return j;
}

inline WheelGaitParams wheel_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + " must be an object", {where});
  WheelGaitParams p;
  std::vector<std::string> bad;
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const auto& f : detail::kWheelFields) {
      if (it.key() != f.key) continue;
      known = true;
      if (!it.value().is_number()) {
        bad.push_back(where + "." + f.key);
      } else {
        p.*(f.member) = it.value().get<double>();
      }
    }
    if (!known) bad.push_back(where + "." + it.key());
  }
  if (!bad.empty()) throw InvalidInput("unknown or non-numeric gait fields", bad);
  return p;
}

/// Gait document; `schema_version` is always written.
inline json to_json(const GaitParams& g) {
  json wheels = json::object();
  for (Wheel w : kAllWheels) wheels[std::string(wheel_name(w))] = wheel_to_json(g[w]);
  return json{{"schema_version", kSchemaVersion},
              {"label", g.label},
              {"posture", std::string(to_string(g.posture))},
              {"wheels", wheels}};
}

/// Parses a gait document. Wheel fields left out take their defaults; unknown
/// fields are rejected so typos do not silently fall back.
inline GaitParams gait_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("gait document must be a JSON object");
  if (!j.contains("schema_version")) {
    throw InvalidInput("gait document is missing schema_version", {"schema_version"});
  }
  if (j.at("schema_version") != kSchemaVersion) {
    throw InvalidInput("unsupported gait schema_version " + j.at("schema_version").dump(),
                       {"schema_version"});
  }
  GaitParams g;
  g.label = j.value("label", std::string("custom"));
  g.posture = posture_from_string(j.value("posture", std::string("constant")));
  if (!j.contains("wheels") || !j.at("wheels").is_object()) {
    throw InvalidInput("gait document needs a 'wheels' object", {"wheels"});
  }
  const json& wheels = j.at("wheels");
  for (auto it = wheels.begin(); it != wheels.end(); ++it) {
    const Wheel w = wheel_from_name(it.key());
    g[w] = wheel_from_json(it.value(), it.key());
  }
  for (Wheel w : kAllWheels) {
    if (!wheels.contains(std::string(wheel_name(w)))) {
      throw InvalidInput("gait document is missing a wheel", {std::string(wheel_name(w))});
    }
  }
  g.validate();
  return g;
}

inline GaitParams load_gait_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open gait file", path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("gait file is not valid JSON: ") + e.what(), path);
  }
  return gait_from_json(j);
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

enum class Preset { kBoRrp, kTrrp, kDs, kSingleRrp, kBoTrrp, kMlInspired };

inline constexpr Preset kAllPresets[] = {Preset::kBoRrp,     Preset::kTrrp,
                                         Preset::kDs,        Preset::kSingleRrp,
                                         Preset::kBoTrrp,    Preset::kMlInspired};

inline std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::kBoRrp: return "BO_RRP";
    case Preset::kTrrp: return "TRRP";
    case Preset::kDs: return "DS";
    case Preset::kSingleRrp: return "SINGLE_RRP";
    case Preset::kBoTrrp: return "BO_TRRP";
    case Preset::kMlInspired: return "ML_INSPIRED";
  }
  return "?";
}

/// A parsed preset file: named gaits plus the file's own version tag.
struct PresetCatalog {
  std::string version;
  std::map<std::string, GaitParams> gaits;

  const GaitParams& get(std::string_view name) const {
    auto it = gaits.find(std::string(name));
    if (it == gaits.end()) throw NotFound("unknown gait preset '" + std::string(name) + "'");
    return it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : gaits) out.push_back(k);
    return out;
  }
};

inline PresetCatalog catalog_from_json(const json& j) {
  if (!j.is_object() || j.value("schema_version", -1) != kSchemaVersion) {
    throw InvalidInput("preset catalog has a missing or unsupported schema_version",
                       {"schema_version"});
  }
  PresetCatalog cat;
  cat.version = j.value("preset_set_version", std::string("unversioned"));
  for (const auto& entry : j.at("presets")) {
    GaitParams g = gait_from_json(entry);
    cat.gaits.emplace(g.label, std::move(g));
  }
  return cat;
}

inline PresetCatalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open preset file", path);
  try {
    return catalog_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw IoError(std::string("preset file is not valid JSON: ") + e.what(), path);
  }
}

/// Catalog compiled in from data/gait_presets.json.
inline const PresetCatalog& builtin_catalog() {
  static const PresetCatalog cat = catalog_from_json(json::parse(generated::kPresetJson));
  return cat;
}

inline GaitParams preset(std::string_view name) { return builtin_catalog().get(name); }
inline GaitParams preset(Preset p) { return preset(preset_name(p)); }

}  // namespace regolith::gait
