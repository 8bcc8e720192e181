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

// Run configuration and experiment records shared by the CLI and the service.

#pragma once

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "regolith/bo/campaign.hpp"
#include "regolith/core.hpp"
#include "regolith/gait_io.hpp"
#include "regolith/json_util.hpp"
#include "regolith/sim_io.hpp"
#include "regolith/slope_sim.hpp"

namespace regolith::harness {

using nlohmann::json;

/// Where a run's gait comes from. Exactly one of the three is used, in the
/// order inline document, file, preset name.
struct GaitSpec {
  std::string preset = "TRRP";
  std::string file;
  std::optional<gait::GaitParams> inline_gait;
};

struct CampaignSettings {
  int budget = 30;
  int n_random = 4;
  std::vector<std::string> seed_gaits = {"TRRP"};
  bo::FailurePolicy failure_policy;
  double episode_duration = 120.0;  // s, per evaluation
  bool stop_at_target = true;
};

struct RunConfig {
  GaitSpec gait;
  sim::SlopeConfig slope;  // terrain parameters serialize as their own section
  sim::EpisodeConfig episode;
  std::uint64_t seed = 0;
  std::string output_dir;   // empty: default under the data directory
  std::string preset_file;  // empty: compiled-in catalog
  CampaignSettings campaign;

  /// Episode settings with the run seed applied.
  sim::EpisodeConfig seeded_episode() const {
    sim::EpisodeConfig e = episode;
    e.rng_seed = seed;
    return e;
  }

  void validate() const {
    slope.validate();
    seeded_episode().validate();
    std::vector<std::string> bad;
    if (campaign.n_random < 0) bad.emplace_back("campaign.n_random");
    if (campaign.budget < campaign.n_random + static_cast<int>(campaign.seed_gaits.size())) {
      bad.emplace_back("campaign.budget");
    }
    if (!(std::isfinite(campaign.episode_duration) && campaign.episode_duration > 0.0)) {
      bad.emplace_back("campaign.episode_duration_s");
    }
    if (!bad.empty()) throw InvalidInput("invalid campaign settings", bad);
  }
};

inline const gait::PresetCatalog& catalog_for(const RunConfig& cfg) {
  if (cfg.preset_file.empty()) return gait::builtin_catalog();
  static thread_local std::string cached_path;
  static thread_local gait::PresetCatalog cached;
  if (cached_path != cfg.preset_file) {
    cached = gait::load_catalog_file(cfg.preset_file);
    cached_path = cfg.preset_file;
  }
  return cached;
}

inline gait::GaitParams resolve_gait(const GaitSpec& spec, const RunConfig& cfg) {
  if (spec.inline_gait) return *spec.inline_gait;
  if (!spec.file.empty()) return gait::load_gait_file(spec.file);
  return catalog_for(cfg).get(spec.preset);
}

inline gait::GaitParams resolve_gait(const RunConfig& cfg) { return resolve_gait(cfg.gait, cfg); }

inline json to_json(const bo::FailurePolicy& p) {
  if (p.kind == bo::FailurePolicy::Kind::kOmit) return "omit";
  return json{{"penalty", p.penalty_value}};
}

inline json to_json(const CampaignSettings& c) {
  return json{{"budget", c.budget},
              {"n_random", c.n_random},
              {"seed_gaits", c.seed_gaits},
              {"failure_policy", to_json(c.failure_policy)},
              {"episode_duration_s", c.episode_duration},
              {"stop_at_target", c.stop_at_target}};
}

/// Config document. With `resolved`, the gait is written inline so the
/// snapshot re-runs without the catalog or gait file.
inline json to_json(const RunConfig& cfg, bool resolved = false) {
  json j{{"schema_version", kSchemaVersion}};
  if (resolved) {
    j["gait"] = gait::to_json(resolve_gait(cfg));
  } else if (cfg.gait.inline_gait) {
    j["gait"] = gait::to_json(*cfg.gait.inline_gait);
  } else if (!cfg.gait.file.empty()) {
    j["gait_file"] = cfg.gait.file;
  } else {
    j["gait"] = cfg.gait.preset;
  }
  j["slope"] = sim::to_json(cfg.slope);
  j["terrain"] = sim::to_json(cfg.slope.terrain);
  j["episode"] = sim::to_json(cfg.episode);
  j["seed"] = cfg.seed;
  j["campaign"] = to_json(cfg.campaign);
  if (!cfg.output_dir.empty()) j["output_dir"] = cfg.output_dir;
  if (!cfg.preset_file.empty()) j["preset_file"] = cfg.preset_file;
  return j;
}

inline void read_campaign(const json& j, CampaignSettings& c, std::vector<std::string>& bad) {
  FieldReader r(j, "campaign", bad);
  r.integer("budget", c.budget);
  r.integer("n_random", c.n_random);
  if (const json* seeds = r.child("seed_gaits")) {
    if (!seeds->is_array()) {
      bad.emplace_back("campaign.seed_gaits");
    } else {
      c.seed_gaits.clear();
      for (const auto& s : *seeds) {
        if (!s.is_string()) {
          bad.emplace_back("campaign.seed_gaits");
          break;
        }
        c.seed_gaits.push_back(s.get<std::string>());
      }
    }
  }
  if (const json* fp = r.child("failure_policy")) {
    if (*fp == "omit") {
      c.failure_policy = bo::FailurePolicy::omit();
    } else if (fp->is_object() && fp->size() == 1 && fp->contains("penalty") &&
               fp->at("penalty").is_number()) {
      c.failure_policy = bo::FailurePolicy::penalty(fp->at("penalty").get<double>());
    } else {
      bad.emplace_back("campaign.failure_policy");
    }
  }
  r.number("episode_duration_s", c.episode_duration);
  r.boolean("stop_at_target", c.stop_at_target);
  r.reject_unknown();
}

/// Parses a config document; every bad or unknown field is reported at once.
inline RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("run configuration must be a JSON object");
  std::vector<std::string> bad;
  RunConfig cfg;
  FieldReader r(j, "", bad);
  if (const json* v = r.child("schema_version"); v && *v != kSchemaVersion) {
    bad.emplace_back("schema_version");
  }
  if (const json* g = r.child("gait")) {
    if (g->is_string()) {
      cfg.gait.preset = g->get<std::string>();
    } else if (g->is_object()) {
      try {
        cfg.gait.inline_gait = gait::gait_from_json(*g);
      } catch (const Error& e) {
        if (e.fields().empty()) bad.emplace_back("gait");
        for (const auto& f : e.fields()) bad.push_back("gait." + f);
      }
    } else {
      bad.emplace_back("gait");
    }
  }
  r.text("gait_file", cfg.gait.file);
  if (const json* s = r.child("slope")) sim::read_slope(*s, "slope", cfg.slope, bad);
  if (const json* t = r.child("terrain")) sim::read_terrain(*t, "terrain", cfg.slope.terrain, bad);
  if (const json* e = r.child("episode")) sim::read_episode(*e, "episode", cfg.episode, bad);
  r.seed("seed", cfg.seed);
  r.text("output_dir", cfg.output_dir);
  r.text("preset_file", cfg.preset_file);
  if (const json* c = r.child("campaign")) read_campaign(*c, cfg.campaign, bad);
  r.reject_unknown();
  if (!bad.empty()) throw InvalidInput("invalid run configuration", bad);
  cfg.validate();
  if (!cfg.gait.inline_gait && cfg.gait.file.empty()) {
    catalog_for(cfg).get(cfg.gait.preset);  // unknown presets fail early
  }
  return cfg;
}

/// Reads a RunConfig document, or the `config` of an experiment record.
inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file", path);
  try {
    const json j = json::parse(in);
    if (j.is_object() && j.contains("kind") && j.contains("config")) {
      return run_config_from_json(j.at("config"));
    }
    return run_config_from_json(j);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("config file is not valid JSON: ") + e.what(), path);
  }
}

// ---------------------------------------------------------------------------
// Paths and records
// ---------------------------------------------------------------------------

/// Artifact root: $REGOLITH_DATA_DIR, else ./regolith_data.
inline std::filesystem::path data_root() {
  if (const char* env = std::getenv("REGOLITH_DATA_DIR"); env && *env) return env;
  return "regolith_data";
}

inline std::filesystem::path output_dir_for(const RunConfig& cfg, const std::string& kind,
                                            const std::string& label) {
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  return data_root() / kind / (label + "_seed" + std::to_string(cfg.seed));
}

inline std::filesystem::path ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory: " + ec.message(), dir.string());
  }
  return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file", path.string());
  out << text;
  if (!out) throw IoError("write failed", path.string());
}

inline std::string utc_timestamp(std::chrono::system_clock::time_point tp =
                                     std::chrono::system_clock::now()) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Self-contained record of one CLI or service run.
struct ExperimentRecord {
  std::string kind;  // simulate | optimize | bench | compare
  json config;       // resolved snapshot
  json result;
  std::string started_utc;
  std::string finished_utc;

  json to_json() const {
    return json{{"schema_version", kSchemaVersion},
                {"library_version", std::string(kLibraryVersion)},
                {"kind", kind},
                {"config", config},
                {"result", result},
                {"started_utc", started_utc},
                {"finished_utc", finished_utc}};
  }
};

}  // namespace regolith::harness
