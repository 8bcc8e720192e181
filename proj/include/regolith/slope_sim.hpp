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

// Quasi-static planar rover on a tilted granular bed.
//
// Motion is resistance dominated, so velocities follow directly from forces
// (first-order, overdamped): v = ΣF / c_t along the heading, ω = Στ / c_r.
// Gravity pulls the body downhill only where spinning wheels have fluidized
// the bed. Frames: slope plane X points uphill, Y across the slope, yaw is
// measured CCW from X. Body frame: x forward, y left.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "regolith/core.hpp"
#include "regolith/gait.hpp"
#include "regolith/terradynamics.hpp"

namespace regolith::sim {

using gait::ActuatorCommand;
using gait::GaitParams;
using terradynamics::TorqueModelParams;
using terradynamics::WheelTerrainState;

/// Mechanism constants of the rover that couple legs to the terrain.
struct RigParams {
  double leg_lever = 0.10;             // m, hip-to-contact distance of a swept leg
  double sweep_torque_gain = 0.5;      // share of sweep torque passed straight to yaw
  double leg_stroke = 0.12;            // m, wheel travel from retracted to extended
  double leg_splay = 0.02;             // m, outward contact shift at full extension
  double engagement_tilt_ref = deg_to_rad(25.0);  // rad
  double roll_relax_time = 0.3;        // s
  double lift_gain = 0.8;              // engagement lost at full recovery lift

  void validate() const {
    std::vector<std::string> bad;
    if (!(leg_lever > 0)) bad.emplace_back("rig.leg_lever");
    if (!(sweep_torque_gain >= 0)) bad.emplace_back("rig.sweep_torque_gain");
    if (!(leg_stroke >= 0)) bad.emplace_back("rig.leg_stroke");
    if (!(leg_splay >= 0)) bad.emplace_back("rig.leg_splay");
    if (!(engagement_tilt_ref > 0)) bad.emplace_back("rig.engagement_tilt_ref");
    if (!(roll_relax_time > 0)) bad.emplace_back("rig.roll_relax_time");
    if (!(lift_gain >= 0 && lift_gain <= 1)) bad.emplace_back("rig.lift_gain");
    if (!bad.empty()) throw InvalidInput("invalid rig parameters", bad);
  }
};

struct SlopeConfig {
  double slope_angle = deg_to_rad(25.0);  // rad
  double gravity = 9.81;                  // m/s²
  double downhill_drag_coeff = 1500.0;    // N·s/m
  double translational_damping = 300.0;   // N·s/m
  double rotational_damping = 4.0;        // N·m·s/rad
  TorqueModelParams terrain{};
  RigParams rig{};

  void validate() const {
    std::vector<std::string> bad;
    if (!(slope_angle >= 0.0 && slope_angle <= deg_to_rad(45.0) + 1e-12)) {
      bad.emplace_back("slope_angle");
    }
    if (!(std::isfinite(gravity) && gravity >= 0.0)) bad.emplace_back("gravity");
    if (!(downhill_drag_coeff > 0.0)) bad.emplace_back("downhill_drag_coeff");
    if (!(translational_damping > 0.0)) bad.emplace_back("translational_damping");
    if (!(rotational_damping > 0.0)) bad.emplace_back("rotational_damping");
    if (!bad.empty()) throw InvalidInput("invalid slope configuration", bad);
    terrain.validate();
    rig.validate();
  }
};

inline SlopeConfig flat_ground() {
  SlopeConfig s;
  s.slope_angle = 0.0;
  return s;
}

struct RoverState {
  double t = 0.0;      // s
  double x = 0.0;      // m, uphill
  double y = 0.0;      // m, across slope
  double yaw = 0.0;    // rad, CCW, 0 = facing uphill
  double roll = 0.0;   // rad, body relative to the slope plane, + = left side up
  PerWheel<WheelTerrainState> wheel_states{};
  PerWheel<double> leg_extensions{0.5, 0.5, 0.5, 0.5};
  double mass = 2.5;         // kg
  double half_track = 0.12;  // m
  double half_base = 0.15;   // m
  double com_height = 0.08;  // m above the contact plane at zero leg extension

  void validate(const TorqueModelParams& terrain) const {
    std::vector<std::string> bad;
    for (double v : {t, x, y, yaw, roll}) {
      if (!std::isfinite(v)) {
        bad.emplace_back("pose");
        break;
      }
    }
    if (!(mass > 0)) bad.emplace_back("mass");
    if (!(half_track > 0)) bad.emplace_back("half_track");
    if (!(half_base > 0)) bad.emplace_back("half_base");
    if (!(com_height > 0)) bad.emplace_back("com_height");
    for (double e : leg_extensions) {
      if (!(e >= 0.0 && e <= 1.0)) {
        bad.emplace_back("leg_extensions");
        break;
      }
    }
    if (!bad.empty()) throw InvalidInput("invalid rover state", bad);
    for (const auto& ws : wheel_states) ws.validate(terrain);
  }

  bool operator==(const RoverState&) const = default;
};

/// Rover at rest on a freshly prepared bed with material packed around the
/// wheels (mound = 1) and legs at neutral extension.
inline RoverState initial_rover_state() {
  RoverState s;
  for (auto& ws : s.wheel_states) ws.mound = 1.0;
  return s;
}

/// Wheel contact position in the body frame at nominal track.
inline std::pair<double, double> wheel_position(const RoverState& s, Wheel w) {
  return {is_front(w) ? s.half_base : -s.half_base,
          is_left(w) ? s.half_track : -s.half_track};
}

/// Body roll relative to the slope plane produced by the leg extensions.
inline double leg_roll(const RoverState& s, const RigParams& rig) {
  const double left = 0.5 * (s.leg_extensions[index(Wheel::kFL)] + s.leg_extensions[index(Wheel::kRL)]);
  const double right = 0.5 * (s.leg_extensions[index(Wheel::kFR)] + s.leg_extensions[index(Wheel::kRR)]);
  return std::atan(rig.leg_stroke * (left - right) / (2.0 * s.half_track));
}

/// Roll of the body relative to gravity's level plane.
inline double gravity_tilt(double roll, double yaw, double slope_angle) {
  return roll - std::asin(std::sin(slope_angle) * std::sin(yaw));
}

/// Per-wheel multiplicative terrain variability; 1 everywhere by default.
using TerrainScale = PerWheel<double>;
inline constexpr TerrainScale kUniformTerrain{1.0, 1.0, 1.0, 1.0};

/// Body-frame rates of the overdamped dynamics at one instant.
struct BodyRates {
  double speed = 0.0;     // m/s along the heading
  double yaw_rate = 0.0;  // rad/s
  double slide = 0.0;     // m/s straight downhill
};

inline BodyRates body_rates(const RoverState& state, const ActuatorCommand& cmd,
                            const SlopeConfig& slope,
                            const TerrainScale& terrain_scale = kUniformTerrain) {
  const TorqueModelParams& terrain = slope.terrain;
  const RigParams& rig = slope.rig;

  const double tilt = gravity_tilt(state.roll, state.yaw, slope.slope_angle);
  const double tilt_ratio = tilt / rig.engagement_tilt_ref;
  const double posture_engagement = 1.0 / (1.0 + tilt_ratio * tilt_ratio);

  double force_x = 0.0;
  double yaw_torque = 0.0;
  double agitation = 0.0;
  for (Wheel w : kAllWheels) {
    const auto& c = cmd[w];
    const auto& ws = state.wheel_states[index(w)];
    const terradynamics::SweepSpinCommand sc{c.sweep_rate, c.spin_rate, c.stroke_angle};
    const double engagement = (1.0 - rig.lift_gain * c.lift) * terrain_scale[index(w)];
    const double sweep_tau =
        terradynamics::resistive_torque(ws, sc, terrain) * posture_engagement * engagement;
    const double push = -sweep_tau;  // reaction on the body, + = sweep-out drive
    const double fx = terradynamics::drive_thrust(c.spin_rate, ws, terrain) * engagement +
                      push / rig.leg_lever;
    const double py = wheel_position(state, w).second;
    force_x += fx;
    yaw_torque += -py * fx + (py < 0.0 ? 1.0 : -1.0) * rig.sweep_torque_gain * push;
    agitation += (1.0 - terradynamics::fluidization_factor(c.spin_rate, terrain)) /
                 (1.0 - terrain.f_min);
  }
  agitation /= static_cast<double>(kWheelCount);

  BodyRates r;
  r.speed = force_x / slope.translational_damping;
  r.yaw_rate = yaw_torque / slope.rotational_damping;
  r.slide = state.mass * slope.gravity * std::sin(slope.slope_angle) /
            slope.downhill_drag_coeff * agitation;
  return r;
}

namespace detail {

// Advances everything but the pose: leg extensions jump to the command, mounds
// follow their (piecewise-linear) update, roll relaxes exactly.
inline RoverState advance_internal(const RoverState& state, const ActuatorCommand& cmd,
                                   const SlopeConfig& slope, double dt) {
  RoverState next = state;
  for (Wheel w : kAllWheels) {
    const auto& c = cmd[w];
    next.leg_extensions[index(w)] = std::clamp(c.leg_extension, 0.0, 1.0);
    next.wheel_states[index(w)] = terradynamics::mound_update(
        state.wheel_states[index(w)], {c.sweep_rate, c.spin_rate, c.stroke_angle}, dt,
        slope.terrain);
  }
  const double roll_target = leg_roll(next, slope.rig);
  next.roll = state.roll +
              (roll_target - state.roll) * (1.0 - std::exp(-dt / slope.rig.roll_relax_time));
  return next;
}

inline void advance_pose(RoverState& out, const RoverState& from, const BodyRates& r,
                         double heading, double dt) {
  out.x = from.x + (r.speed * std::cos(heading) - r.slide) * dt;
  out.y = from.y + r.speed * std::sin(heading) * dt;
  out.yaw = from.yaw + r.yaw_rate * dt;
}

}  // namespace detail

/// One step of the overdamped rover dynamics (explicit midpoint rule, command
/// held over the step).
inline RoverState step(const RoverState& state, const ActuatorCommand& cmd,
                       const SlopeConfig& slope, double dt,
                       const TerrainScale& terrain_scale = kUniformTerrain) {
  if (!(std::isfinite(dt) && dt > 0.0 && dt <= 0.05)) {
    throw InvalidInput("dt must lie in (0, 0.05] s", {"dt"});
  }
  const BodyRates r1 = body_rates(state, cmd, slope, terrain_scale);
  RoverState mid = detail::advance_internal(state, cmd, slope, 0.5 * dt);
  detail::advance_pose(mid, state, r1, state.yaw, 0.5 * dt);
  const BodyRates r2 = body_rates(mid, cmd, slope, terrain_scale);

  RoverState next = detail::advance_internal(state, cmd, slope, dt);
  next.t = state.t + dt;
  detail::advance_pose(next, state, r2, mid.yaw, dt);
  return next;
}

// ---------------------------------------------------------------------------
// Static stability
// ---------------------------------------------------------------------------

enum class Stability { kStable, kUnstable };

struct StabilityReport {
  Stability verdict = Stability::kStable;
  double margin = 0.0;                   // m, signed distance to the nearest edge
  double com_x = 0.0, com_y = 0.0;       // projected CoM in the body frame
  std::array<std::pair<double, double>, 4> contacts{};  // CCW: FL, RL, RR, FR
};

/// Projects the CoM along gravity onto the contact plane and tests it against
/// the quadrilateral of wheel contacts. Leg extension raises the CoM and
/// pushes its contact outward; body roll tilts the CoM sideways.
inline StabilityReport support_polygon_report(const RoverState& s, const SlopeConfig& slope) {
  const RigParams& rig = slope.rig;
  StabilityReport r;
  const auto contact = [&](Wheel w) {
    const auto [px, py] = wheel_position(s, w);
    const double splay = rig.leg_splay * s.leg_extensions[index(w)];
    return std::pair<double, double>{px, py + (is_left(w) ? splay : -splay)};
  };
  r.contacts = {contact(Wheel::kFL), contact(Wheel::kRL), contact(Wheel::kRR), contact(Wheel::kFR)};

  double area2 = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& a = r.contacts[i];
    const auto& b = r.contacts[(i + 1) % 4];
    area2 += a.first * b.second - b.first * a.second;
  }
  if (!(std::abs(area2) > 1e-12)) throw GeometryError("wheel contacts are collinear");

  double mean_ext = 0.0;
  for (double e : s.leg_extensions) mean_ext += e;
  mean_ext /= static_cast<double>(kWheelCount);
  const double height = s.com_height + rig.leg_stroke * mean_ext;
  const double com_y = -height * std::sin(s.roll);
  const double com_z = height * std::cos(s.roll);
  // Gravity's in-plane component points downhill; in the body frame that is
  // (−cos yaw, sin yaw).
  const double shift = com_z * std::tan(slope.slope_angle);
  r.com_x = -shift * std::cos(s.yaw);
  r.com_y = com_y + shift * std::sin(s.yaw);

  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& a = r.contacts[i];
    const auto& b = r.contacts[(i + 1) % 4];
    const double ex = b.first - a.first;
    const double ey = b.second - a.second;
    const double len = std::hypot(ex, ey);
    // Positive on the interior side of a CCW polygon.
    const double d = (ex * (r.com_y - a.second) - ey * (r.com_x - a.first)) / len;
    margin = std::min(margin, area2 > 0 ? d : -d);
  }
  r.margin = margin;
  r.verdict = margin > 0.0 ? Stability::kStable : Stability::kUnstable;
  return r;
}

inline Stability support_polygon_check(const RoverState& s, const SlopeConfig& slope) {
  return support_polygon_report(s, slope).verdict;
}

// ---------------------------------------------------------------------------
// Episodes
// ---------------------------------------------------------------------------

struct EpisodeConfig {
  double duration = 240.0;                 // s
  double dt = 0.01;                        // s
  double target_yaw = deg_to_rad(90.0);    // rad
  double failure_slide_limit = 0.5;        // m
  std::uint64_t rng_seed = 0;
  bool stop_at_target = false;
  double sample_interval = 0.05;           // s between stored samples
  double terrain_noise = 0.0;              // std of per-step wheel engagement noise

  void validate() const {
    std::vector<std::string> bad;
    if (!(dt > 0.0 && dt <= 0.05)) bad.emplace_back("dt");
    if (!(std::isfinite(duration) && duration > 0.0)) bad.emplace_back("duration");
    if (!std::isfinite(target_yaw)) bad.emplace_back("target_yaw");
    if (!(failure_slide_limit > 0.0)) bad.emplace_back("failure_slide_limit");
    if (!(sample_interval > 0.0)) bad.emplace_back("sample_interval");
    if (!(terrain_noise >= 0.0 && std::isfinite(terrain_noise))) bad.emplace_back("terrain_noise");
    if (!bad.empty()) throw InvalidInput("invalid episode configuration", bad);
  }
};

enum class Outcome { kCompleted, kFailedTipOver, kFailedSlide };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kCompleted: return "completed";
    case Outcome::kFailedTipOver: return "failed_tip_over";
    case Outcome::kFailedSlide: return "failed_slide";
  }
  return "?";
}

struct Sample {
  double t = 0.0;
  RoverState state;
};

struct EpisodeResult {
  std::vector<Sample> samples;
  Outcome outcome = Outcome::kCompleted;
  double final_yaw = 0.0;
  std::optional<double> time_to_target;
  double downhill_drift = 0.0;  // m, furthest point below the start

  bool failed() const { return outcome != Outcome::kCompleted; }
};

/// Linear-interpolated time at which `from → to` crosses `target`, if it does.
inline std::optional<double> crossing_time(double t0, double v0, double t1, double v1,
                                           double target) {
  if (v1 == target) return t1;
  if ((v0 - target) * (v1 - target) >= 0.0) return std::nullopt;
  return t0 + (target - v0) / (v1 - v0) * (t1 - t0);
}

/// First time the yaw trace reaches `target`; none if it never does.
inline std::optional<double> time_to_yaw(const EpisodeResult& result, double target) {
  const auto& s = result.samples;
  if (s.empty()) return std::nullopt;
  if (s.front().state.yaw == target) return s.front().t;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (auto tc = crossing_time(s[i - 1].t, s[i - 1].state.yaw, s[i].t, s[i].state.yaw, target)) {
      return tc;
    }
  }
  return std::nullopt;
}

/// Runs the open-loop gait from yaw 0 until the duration elapses, the rover
/// fails, or (with stop_at_target) the target yaw is reached.
inline EpisodeResult run_episode(const GaitParams& gait, const SlopeConfig& slope,
                                 const EpisodeConfig& cfg,
                                 RoverState state = initial_rover_state()) {
  gait.validate();
  slope.validate();
  cfg.validate();
  state.validate(slope.terrain);

  std::mt19937_64 rng(cfg.rng_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  TerrainScale scale = kUniformTerrain;

  const auto steps = static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt));
  const auto stride = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(cfg.sample_interval / cfg.dt)));
  const double x0 = state.x;
  const double t0 = state.t;

  EpisodeResult result;
  result.samples.reserve(steps / stride + 2);
  result.samples.push_back({state.t, state});

  bool last_sampled = true;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t_gait = (static_cast<double>(i) + 0.5) * cfg.dt;
    const ActuatorCommand cmd = gait::apply_posture(gait::commands_at(gait, t_gait), gait, state.yaw);
    if (cfg.terrain_noise > 0.0) {
      for (auto& v : scale) v = std::max(0.0, 1.0 + cfg.terrain_noise * normal(rng));
    }
    RoverState next = step(state, cmd, slope, cfg.dt, scale);
    next.t = t0 + static_cast<double>(i + 1) * cfg.dt;

    if (!result.time_to_target) {
      if (auto tc = crossing_time(state.t, state.yaw, next.t, next.yaw, cfg.target_yaw)) {
        result.time_to_target = *tc - t0;
      }
    }
    result.downhill_drift = std::max(result.downhill_drift, x0 - next.x);
    state = next;

    last_sampled = (i + 1) % stride == 0;
    if (last_sampled) result.samples.push_back({state.t, state});

    if (support_polygon_check(state, slope) == Stability::kUnstable) {
      result.outcome = Outcome::kFailedTipOver;
      break;
    }
    if (result.downhill_drift > cfg.failure_slide_limit) {
      result.outcome = Outcome::kFailedSlide;
      break;
    }
    if (cfg.stop_at_target && result.time_to_target) break;
  }
  if (!last_sampled) result.samples.push_back({state.t, state});
  result.final_yaw = result.samples.back().state.yaw;
  return result;
}

}  // namespace regolith::sim
