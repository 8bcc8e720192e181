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

// The four harness workflows. The CLI and the HTTP service both call these,
// so their numbers come from one code path.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "regolith/bo/campaign.hpp"
#include "regolith/gait_space.hpp"
#include "regolith/harness/run_config.hpp"
#include "regolith/sim_io.hpp"
#include "regolith/slope_sim.hpp"
#include "regolith/terradynamics.hpp"

namespace regolith::harness {

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOutput {
  gait::GaitParams gait;
  sim::EpisodeResult result;
  json summary;
};

inline SimulateOutput run_simulate(const RunConfig& cfg) {
  cfg.validate();
  SimulateOutput out;
  out.gait = resolve_gait(cfg);
  out.result = sim::run_episode(out.gait, cfg.slope, cfg.seeded_episode());
  out.summary = sim::summary_json(out.result, out.gait.label, cfg.seed);
  return out;
}

/// trajectory.csv, samples.jsonl, summary.json and record.json.
inline void write_simulate_artifacts(const std::filesystem::path& dir, const RunConfig& cfg,
                                     const SimulateOutput& out, const std::string& started) {
  ensure_dir(dir);
  std::ostringstream csv, jsonl;
  sim::write_trajectory_csv(csv, out.result);
  sim::write_samples_jsonl(jsonl, out.result);
  write_text(dir / "trajectory.csv", csv.str());
  write_text(dir / "samples.jsonl", jsonl.str());
  write_text(dir / "summary.json", out.summary.dump(2) + "\n");
  ExperimentRecord rec{"simulate", to_json(cfg, true), out.summary, started, utc_timestamp()};
  write_text(dir / "record.json", rec.to_json().dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

/// Campaign evaluator: decode, run one evaluation episode, report final yaw.
inline bo::Evaluator make_gait_evaluator(const RunConfig& cfg, const bo::ParamSpace& space,
                                         const gait::GaitParams& base) {
  sim::EpisodeConfig ep = cfg.seeded_episode();
  ep.duration = cfg.campaign.episode_duration;
  ep.stop_at_target = cfg.campaign.stop_at_target;
  const sim::SlopeConfig slope = cfg.slope;
  return [space, base, ep, slope](const std::vector<double>& x) {
    const gait::GaitParams g = gait::decode(x, space, base);
    const sim::EpisodeResult r = sim::run_episode(g, slope, ep);
    return bo::EvalResult{r.final_yaw, r.failed()};
  };
}

inline bo::CampaignConfig campaign_config(const RunConfig& cfg, const bo::ParamSpace& space) {
  bo::CampaignConfig c;
  c.budget = cfg.campaign.budget;
  c.n_random = cfg.campaign.n_random;
  c.rng_seed = cfg.seed;
  c.failure_policy = cfg.campaign.failure_policy;
  for (const auto& name : cfg.campaign.seed_gaits) {
    c.seed_points.push_back(gait::encode(catalog_for(cfg).get(name), space));
  }
  return c;
}

/// Base gait for unsearched fields: the first seed gait, else TRRP.
inline gait::GaitParams campaign_base(const RunConfig& cfg) {
  const std::string name =
      cfg.campaign.seed_gaits.empty() ? std::string("TRRP") : cfg.campaign.seed_gaits.front();
  return catalog_for(cfg).get(name);
}

struct OptimizeOutput {
  bo::CampaignLog log;
  std::optional<gait::GaitParams> best_gait;
  json best_summary;  // full-length episode of the best gait, null if none
  json summary;
};

inline json optimize_summary(const RunConfig& cfg, const OptimizeOutput& out) {
  json j = bo::summary_json(out.log);
  j["budget"] = cfg.campaign.budget;
  j["seed"] = cfg.seed;
  j["best_gait"] = out.best_gait ? gait::to_json(*out.best_gait) : json(nullptr);
  j["best_episode"] = out.best_summary;
  return j;
}

/// Runs or resumes a campaign; `resume` holds the records already logged.
inline OptimizeOutput run_optimize(const RunConfig& cfg, bo::CampaignLog resume = {},
                                   const bo::CampaignHooks& hooks = {}) {
  cfg.validate();
  const bo::ParamSpace space = gait::default_gait_space();
  const gait::GaitParams base = campaign_base(cfg);
  OptimizeOutput out;
  out.log = bo::run_campaign(make_gait_evaluator(cfg, space, base), campaign_config(cfg, space),
                             space.d(), std::move(resume), hooks);
  out.best_summary = nullptr;
  if (const auto best = out.log.best()) {
    gait::GaitParams g = gait::decode(best->x, space, base);
    g.label = "BO_BEST";
    const sim::EpisodeResult r = sim::run_episode(g, cfg.slope, cfg.seeded_episode());
    out.best_summary = sim::summary_json(r, g.label, cfg.seed);
    out.best_gait = std::move(g);
  }
  out.summary = optimize_summary(cfg, out);
  return out;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchSettings {
  terradynamics::BenchProtocol solid = terradynamics::protocol_solid();
  terradynamics::BenchProtocol fluid = terradynamics::protocol_fluid();
  terradynamics::TorqueModelParams params;
  double dt = terradynamics::kDefaultBenchDt;
};

inline json profile_json(const terradynamics::TorqueProfile& p) {
  json arr = json::array();
  for (const auto& s : p) arr.push_back(json{{"t_s", s.t}, {"torque_Nm", s.torque}});
  return arr;
}

inline json bench_summary(const BenchSettings& b, const terradynamics::BenchComparison& c) {
  auto protocol = [](const terradynamics::BenchProtocol& p) {
    return json{{"spin_rate_rad_s", p.spin_rate},
                {"sweep_rate_rad_s", p.sweep_rate},
                {"sweep_extent_deg", rad_to_deg(p.sweep_extent)}};
  };
  const bool empty = c.solid.empty() || c.fluid.empty();
  return json{{"schema_version", kSchemaVersion},
              {"protocol_a", protocol(b.solid)},
              {"protocol_b", protocol(b.fluid)},
              {"samples_a", c.solid.size()},
              {"samples_b", c.fluid.size()},
              {"peak_a_Nm", terradynamics::peak_abs_torque(c.solid)},
              {"peak_b_Nm", terradynamics::peak_abs_torque(c.fluid)},
              {"peak_ratio", empty ? json(nullptr) : json(c.peak_ratio)},
              {"duration_ratio", empty ? json(nullptr) : json(c.duration_ratio)},
              {"time_to_95pct_a_s", c.solid.empty() ? json(nullptr) : json(c.solid_time_to_95)}};
}

inline terradynamics::BenchComparison run_bench(const BenchSettings& b) {
  b.params.validate();
  return terradynamics::compare_protocols(b.solid, b.fluid, b.params, b.dt);
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareOutput {
  std::vector<std::string> names;  // deduplicated, input order
  std::vector<std::string> duplicates;
  std::vector<sim::EpisodeResult> results;
  json ordering;
};

inline CompareOutput run_compare(const RunConfig& cfg, const std::vector<std::string>& gaits) {
  if (gaits.empty()) throw InvalidInput("compare needs at least one gait", {"gait"});
  cfg.validate();
  CompareOutput out;
  for (const auto& name : gaits) {
    if (std::find(out.names.begin(), out.names.end(), name) != out.names.end()) {
      out.duplicates.push_back(name);
      continue;
    }
    catalog_for(cfg).get(name);
    out.names.push_back(name);
  }
  for (const auto& name : out.names) {
    out.results.push_back(
        sim::run_episode(catalog_for(cfg).get(name), cfg.slope, cfg.seeded_episode()));
  }
  // Gaits that reach the target first come first; the rest keep input order.
  std::vector<std::size_t> order(out.names.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ta = out.results[a].time_to_target;
    const auto& tb = out.results[b].time_to_target;
    if (ta && tb) return *ta < *tb;
    return ta.has_value() && !tb.has_value();
  });
  json rows = json::array();
  for (std::size_t i : order) {
    const auto& r = out.results[i];
    rows.push_back(json{{"gait", out.names[i]},
                        {"time_to_target_s", r.time_to_target ? json(*r.time_to_target) : json(nullptr)},
                        {"final_yaw_rad", r.final_yaw},
                        {"outcome", std::string(sim::to_string(r.outcome))}});
  }
  out.ordering = json{{"schema_version", kSchemaVersion},
                      {"target_yaw_deg", rad_to_deg(cfg.episode.target_yaw)},
                      {"ordering", rows},
                      {"duplicates_dropped", out.duplicates}};
  return out;
}

/// `t_s,yaw_rad_<gait>...` on the shared sample grid; cells are empty after
/// an episode ends early.
inline void write_compare_csv(std::ostream& os, const CompareOutput& c) {
  os << "t_s";
  for (const auto& n : c.names) os << ",yaw_rad_" << n;
  os << '\n';
  std::size_t rows = 0;
  const sim::EpisodeResult* longest = nullptr;
  for (const auto& r : c.results) {
    if (r.samples.size() > rows) {
      rows = r.samples.size();
      longest = &r;
    }
  }
  for (std::size_t i = 0; i < rows; ++i) {
    os << format_number(longest->samples[i].t);
    for (const auto& r : c.results) {
      os << ',';
      if (i < r.samples.size() && r.samples[i].t == longest->samples[i].t) {
        os << format_number(r.samples[i].state.yaw);
      }
    }
    os << '\n';
  }
}

}  // namespace regolith::harness
