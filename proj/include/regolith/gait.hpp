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

// Open-loop wheel-leg gaits.
//
// Each wheel-leg either spins continuously (zero sweep amplitude) or runs a
// two-stroke cycle: sweep-out toward the rear of the rover, then sweep-in back
// toward the front, each stroke with its own sweep rate and wheel spin.
//
// Sign conventions: positive spin drives the rover forward; positive sweep
// rate is sweep-out. Yaw is counter-clockwise positive seen from above.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "regolith/core.hpp"

namespace regolith::gait {

/// Largest sweep the rover's legs are commanded through.
inline constexpr double kMaxSweepAmplitude = deg_to_rad(100.0);
/// Leg extension that leaves the body level on flat ground.
inline constexpr double kNeutralExtension = 0.5;

struct WheelGaitParams {
  double drive_spin = 0.0;             // rad/s, used when not sweeping
  double sweep_amplitude = 0.0;        // rad
  double sweep_out_rate = 1.0;         // rad/s
  double sweep_in_rate = 1.0;          // rad/s
  double spin_during_sweep_out = 0.0;  // rad/s, 0 = halted (solid stroke)
  double spin_during_sweep_in = 0.0;   // rad/s
  double leg_extension = kNeutralExtension;  // [0, 1]
  double sweep_in_lift = 0.0;          // [0, 1], leg lift on the recovery stroke
  double phase_offset = 0.0;           // cycles, [0, 1)

  bool sweeps() const { return sweep_amplitude > 0.0; }

  /// Appends "<prefix>.<field>" for each violated invariant.
  void collect_violations(const std::string& prefix, std::vector<std::string>& bad) const {
    auto check = [&](bool ok, const char* field) {
      if (!ok) bad.push_back(prefix + "." + field);
    };
    check(std::isfinite(drive_spin), "drive_spin");
    check(sweep_amplitude >= 0.0 && sweep_amplitude <= kMaxSweepAmplitude + 1e-12,
          "sweep_amplitude");
    check(std::isfinite(sweep_out_rate) && (!sweeps() || sweep_out_rate > 0.0),
          "sweep_out_rate");
    check(std::isfinite(sweep_in_rate) && (!sweeps() || sweep_in_rate > 0.0),
          "sweep_in_rate");
    check(std::isfinite(spin_during_sweep_out), "spin_during_sweep_out");
    check(std::isfinite(spin_during_sweep_in), "spin_during_sweep_in");
    check(leg_extension >= 0.0 && leg_extension <= 1.0, "leg_extension");
    check(sweep_in_lift >= 0.0 && sweep_in_lift <= 1.0, "sweep_in_lift");
    check(phase_offset >= 0.0 && phase_offset < 1.0, "phase_offset");
  }

  bool operator==(const WheelGaitParams&) const = default;
};

enum class PostureMode {
  kConstant,      // leg extensions held as commanded
  kYawScheduled,  // extensions blend in with |sin(yaw)| as the body turns across the slope
};

inline std::string_view to_string(PostureMode mode) {
  return mode == PostureMode::kConstant ? "constant" : "yaw_scheduled";
}

inline PostureMode posture_from_string(std::string_view s) {
  if (s == "constant") return PostureMode::kConstant;
  if (s == "yaw_scheduled") return PostureMode::kYawScheduled;
  throw InvalidInput("unknown posture mode '" + std::string(s) + "'", {"posture"});
}

struct GaitParams {
  PerWheel<WheelGaitParams> wheels{};
  std::string label = "custom";
  PostureMode posture = PostureMode::kConstant;

  WheelGaitParams& operator[](Wheel w) { return wheels[index(w)]; }
  const WheelGaitParams& operator[](Wheel w) const { return wheels[index(w)]; }

  void validate() const {
    std::vector<std::string> bad;
    for (Wheel w : kAllWheels) {
      (*this)[w].collect_violations(std::string(wheel_name(w)), bad);
    }
    if (!bad.empty()) throw InvalidInput("invalid gait parameters", bad);
  }

  bool operator==(const GaitParams&) const = default;
};

/// Cycle period of one wheel. Non-sweeping wheels take the longest period
/// among the sweeping wheels (1 s if none sweep) so phases stay aligned.
inline double wheel_period(const GaitParams& gait, Wheel w) {
  const auto own = [](const WheelGaitParams& p) {
    return p.sweep_amplitude / p.sweep_out_rate + p.sweep_amplitude / p.sweep_in_rate;
  };
  if (gait[w].sweeps()) return own(gait[w]);
  double longest = 0.0;
  for (const auto& p : gait.wheels) {
    if (p.sweeps()) longest = std::max(longest, own(p));
  }
  return longest > 0.0 ? longest : 1.0;
}

/// Longest wheel period of the gait.
inline double cycle_period(const GaitParams& gait) {
  double longest = 0.0;
  for (Wheel w : kAllWheels) longest = std::max(longest, wheel_period(gait, w));
  return longest;
}

struct WheelCommand {
  double spin_rate = 0.0;      // rad/s
  double sweep_rate = 0.0;     // rad/s, positive = sweep-out
  double sweep_angle = 0.0;    // rad, leg position in [0, amplitude]
  double stroke_angle = 0.0;   // rad travelled since the stroke began
  double leg_extension = kNeutralExtension;
  double lift = 0.0;           // leg lift applied during this stroke

  bool operator==(const WheelCommand&) const = default;
};

/// Snapshot of all twelve actuators (spin, sweep, extension per wheel-leg).
struct ActuatorCommand {
  PerWheel<WheelCommand> wheels{};

  WheelCommand& operator[](Wheel w) { return wheels[index(w)]; }
  const WheelCommand& operator[](Wheel w) const { return wheels[index(w)]; }

  bool operator==(const ActuatorCommand&) const = default;
};

inline WheelCommand wheel_command_at(const GaitParams& gait, Wheel w, double t) {
  const WheelGaitParams& p = gait[w];
  WheelCommand c;
  c.leg_extension = p.leg_extension;
  if (!p.sweeps()) {
    c.spin_rate = p.drive_spin;
    return c;
  }
  const double period = wheel_period(gait, w);
  const double out_time = p.sweep_amplitude / p.sweep_out_rate;
  double cycles = t / period + p.phase_offset;
  cycles -= std::floor(cycles);
  const double tau = cycles * period;
  if (tau < out_time) {
    c.spin_rate = p.spin_during_sweep_out;
    c.sweep_rate = p.sweep_out_rate;
    c.sweep_angle = std::min(p.sweep_amplitude, p.sweep_out_rate * tau);
    c.stroke_angle = c.sweep_angle;
  } else {
    const double travelled = std::min(p.sweep_amplitude, p.sweep_in_rate * (tau - out_time));
    c.spin_rate = p.spin_during_sweep_in;
    c.sweep_rate = -p.sweep_in_rate;
    c.sweep_angle = p.sweep_amplitude - travelled;
    c.stroke_angle = travelled;
    c.lift = p.sweep_in_lift;
  }
  return c;
}

/// Actuator targets of the open-loop gait at time t (s, t ≥ 0).
inline ActuatorCommand commands_at(const GaitParams& gait, double t) {
  if (!(std::isfinite(t) && t >= 0.0)) {
    throw InvalidInput("time must be finite and non-negative", {"t"});
  }
  ActuatorCommand cmd;
  for (Wheel w : kAllWheels) cmd[w] = wheel_command_at(gait, w, t);
  return cmd;
}

/// Blends leg extensions toward the gait's posture as the body turns across
/// the slope. Extension deviation from neutral scales with |sin(yaw)|, which
/// is zero facing straight up the slope and one facing across it.
inline ActuatorCommand apply_posture(ActuatorCommand cmd, const GaitParams& gait, double yaw) {
  if (gait.posture == PostureMode::kConstant) return cmd;
  const double blend = std::abs(std::sin(yaw));
  for (Wheel w : kAllWheels) {
    cmd[w].leg_extension =
        kNeutralExtension + (gait[w].leg_extension - kNeutralExtension) * blend;
  }
  return cmd;
}

/// Reflects a gait through the body midline. With forward-positive spin and
/// rearward sweep-out both invariant under reflection, mirroring is a plain
/// left/right swap; the result turns clockwise where the original turns
/// counter-clockwise.
inline GaitParams mirror(const GaitParams& gait) {
  GaitParams out = gait;
  for (Wheel w : kAllWheels) out[mirror_of(w)] = gait[w];
  return out;
}

}  // namespace regolith::gait
