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

// JSON, JSON-lines and CSV forms of simulator configuration and results.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "regolith/json_util.hpp"
#include "regolith/slope_sim.hpp"
#include "regolith/terradynamics.hpp"

namespace regolith::sim {

using nlohmann::json;

inline json to_json(const TorqueModelParams& p) {
  return json{{"tau_sat_N_m", p.tau_sat},
              {"phi_c_rad", p.phi_c},
              {"omega_ref_rad_s", p.omega_ref},
              {"f_min", p.f_min},
              {"thrust_coeff_N_s_rad", p.thrust_coeff},
              {"slip_sat_rad_s", p.slip_sat},
              {"mound_gain_per_rad", p.mound_gain},
              {"mound_decay_per_rad", p.mound_decay},
              {"relax_time_s", p.relax_time}};
}

inline void read_terrain(const json& j, const std::string& prefix, TorqueModelParams& p,
                         std::vector<std::string>& bad) {
  FieldReader r(j, prefix, bad);
  r.number("tau_sat_N_m", p.tau_sat);
  r.number("phi_c_rad", p.phi_c);
  r.number("omega_ref_rad_s", p.omega_ref);
  r.number("f_min", p.f_min);
  r.number("thrust_coeff_N_s_rad", p.thrust_coeff);
  r.number("slip_sat_rad_s", p.slip_sat);
  r.number("mound_gain_per_rad", p.mound_gain);
  r.number("mound_decay_per_rad", p.mound_decay);
  r.number("relax_time_s", p.relax_time);
  r.reject_unknown();
}

inline json to_json(const RigParams& p) {
  return json{{"leg_lever_m", p.leg_lever},
              {"sweep_torque_gain", p.sweep_torque_gain},
              {"leg_stroke_m", p.leg_stroke},
              {"leg_splay_m", p.leg_splay},
              {"engagement_tilt_ref_deg", rad_to_deg(p.engagement_tilt_ref)},
              {"roll_relax_time_s", p.roll_relax_time},
              {"lift_gain", p.lift_gain}};
}

inline void read_rig(const json& j, const std::string& prefix, RigParams& p,
                     std::vector<std::string>& bad) {
  FieldReader r(j, prefix, bad);
  r.number("leg_lever_m", p.leg_lever);
  r.number("sweep_torque_gain", p.sweep_torque_gain);
  r.number("leg_stroke_m", p.leg_stroke);
  r.number("leg_splay_m", p.leg_splay);
  r.degrees("engagement_tilt_ref_deg", p.engagement_tilt_ref);
  r.number("roll_relax_time_s", p.roll_relax_time);
  r.number("lift_gain", p.lift_gain);
  r.reject_unknown();
}

/// Slope document; terrain parameters live in their own section of RunConfig.
inline json to_json(const SlopeConfig& s) {
  return json{{"slope_angle_deg", rad_to_deg(s.slope_angle)},
              {"gravity_m_s2", s.gravity},
              {"downhill_drag_coeff_N_s_m", s.downhill_drag_coeff},
              {"translational_damping_N_s_m", s.translational_damping},
              {"rotational_damping_N_m_s_rad", s.rotational_damping},
              {"rig", to_json(s.rig)}};
}

inline void read_slope(const json& j, const std::string& prefix, SlopeConfig& s,
                       std::vector<std::string>& bad) {
  FieldReader r(j, prefix, bad);
  r.degrees("slope_angle_deg", s.slope_angle);
  r.number("gravity_m_s2", s.gravity);
  r.number("downhill_drag_coeff_N_s_m", s.downhill_drag_coeff);
  r.number("translational_damping_N_s_m", s.translational_damping);
  r.number("rotational_damping_N_m_s_rad", s.rotational_damping);
  if (const json* rig = r.child("rig")) read_rig(*rig, r.path("rig"), s.rig, bad);
  r.reject_unknown();
}

/// Episode document. The RNG seed is carried by RunConfig, not here.
inline json to_json(const EpisodeConfig& c) {
  return json{{"duration_s", c.duration},
              {"dt_s", c.dt},
              {"target_yaw_deg", rad_to_deg(c.target_yaw)},
              {"failure_slide_limit_m", c.failure_slide_limit},
              {"stop_at_target", c.stop_at_target},
              {"sample_interval_s", c.sample_interval},
              {"terrain_noise", c.terrain_noise}};
}

inline void read_episode(const json& j, const std::string& prefix, EpisodeConfig& c,
                         std::vector<std::string>& bad) {
  FieldReader r(j, prefix, bad);
  r.number("duration_s", c.duration);
  r.number("dt_s", c.dt);
  r.degrees("target_yaw_deg", c.target_yaw);
  r.number("failure_slide_limit_m", c.failure_slide_limit);
  r.boolean("stop_at_target", c.stop_at_target);
  r.number("sample_interval_s", c.sample_interval);
  r.number("terrain_noise", c.terrain_noise);
  r.reject_unknown();
}

inline json summary_json(const EpisodeResult& r, const std::string& gait_label,
                         std::uint64_t seed) {
  const RoverState& last = r.samples.back().state;
  return json{{"schema_version", kSchemaVersion},
              {"gait", gait_label},
              {"seed", seed},
              {"outcome", std::string(to_string(r.outcome))},
              {"final_yaw_rad", r.final_yaw},
              {"final_yaw_deg", rad_to_deg(r.final_yaw)},
              {"time_to_target_s", r.time_to_target ? json(*r.time_to_target) : json(nullptr)},
              {"downhill_drift_m", r.downhill_drift},
              {"end_time_s", r.samples.back().t},
              {"final_x_m", last.x},
              {"final_y_m", last.y},
              {"sample_count", r.samples.size()}};
}

inline json sample_json(const Sample& s) {
  json mounds = json::array();
  for (const auto& ws : s.state.wheel_states) mounds.push_back(ws.mound);
  return json{{"t_s", s.t},
              {"x_m", s.state.x},
              {"y_m", s.state.y},
              {"yaw_rad", s.state.yaw},
              {"roll_rad", s.state.roll},
              {"leg_extensions", s.state.leg_extensions},
              {"mounds", mounds}};
}

/// One sample per line.
inline void write_samples_jsonl(std::ostream& os, const EpisodeResult& r) {
  for (const auto& s : r.samples) {
    json j = sample_json(s);
    j["schema_version"] = kSchemaVersion;
    os << j.dump() << '\n';
  }
}

/// `t_s,x_m,y_m,yaw_rad,roll_rad,outcome`; every row but the last reads
/// "running".
inline void write_trajectory_csv(std::ostream& os, const EpisodeResult& r) {
  os << "t_s,x_m,y_m,yaw_rad,roll_rad,outcome\n";
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    os << format_number(s.t) << ',' << format_number(s.state.x) << ','
       << format_number(s.state.y) << ',' << format_number(s.state.yaw) << ','
       << format_number(s.state.roll) << ','
       << (i + 1 == r.samples.size() ? to_string(r.outcome) : std::string_view("running"))
       << '\n';
  }
}

/// At most `max_points` samples, evenly strided, always keeping the last.
inline std::vector<Sample> downsample(const std::vector<Sample>& samples,
                                      std::size_t max_points) {
  if (max_points == 0 || samples.size() <= max_points) return samples;
  if (max_points == 1) return {samples.back()};
  std::vector<Sample> out;
  const std::size_t stride = (samples.size() + max_points - 2) / (max_points - 1);
  for (std::size_t i = 0; i + 1 < samples.size(); i += stride) out.push_back(samples[i]);
  out.push_back(samples.back());
  return out;
}

}  // namespace regolith::sim
