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

// Phenomenological wheel-leg / granular-media interaction.
//
// A sweeping wheel-leg meets a resistive torque that builds up with sweep
// angle and is scaled down when the wheel spins (spin shears and fluidizes
// the grains around it). A mound of compacted material in front of the wheel
// raises both the sweep resistance and the traction available to spinning.

#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "regolith/core.hpp"

namespace regolith::terradynamics {

/// Immersion depth used for the bench calibration (m).
inline constexpr double kReferenceImmersion = 0.02;

struct TorqueModelParams {
  double tau_sat = 1.0;          // N·m, saturated torque with no fluidization
  double phi_c = 0.195;          // rad, torque build-up angle
  double omega_ref = 16.606;     // rad/s, spin rate of half fluidization effect
  double f_min = 0.1;            // fully fluidized residual factor
  double thrust_coeff = 0.4;     // N·s/rad
  double slip_sat = 5.0;         // rad/s
  double mound_gain = 0.05;      // 1/rad of sweep
  double mound_decay = 0.04;     // 1/rad of spin
  double relax_time = 0.17;      // s, bench stress relaxation

  void validate() const {
    std::vector<std::string> bad;
    auto check = [&](bool ok, const char* name) {
      if (!ok) bad.emplace_back(name);
    };
    check(std::isfinite(tau_sat) && tau_sat > 0, "tau_sat");
    check(std::isfinite(phi_c) && phi_c > 0, "phi_c");
    check(std::isfinite(omega_ref) && omega_ref > 0, "omega_ref");
    check(f_min > 0 && f_min < 1, "f_min");
    check(std::isfinite(thrust_coeff) && thrust_coeff >= 0, "thrust_coeff");
    check(std::isfinite(slip_sat) && slip_sat > 0, "slip_sat");
    check(std::isfinite(mound_gain) && mound_gain >= 0, "mound_gain");
    check(std::isfinite(mound_decay) && mound_decay >= 0, "mound_decay");
    check(std::isfinite(relax_time) && relax_time >= 0, "relax_time");
    if (!bad.empty()) {
      throw InvalidInput("invalid torque model parameters", bad);
    }
  }

  /// Same model with tau_sat scaled linearly from the reference immersion.
  TorqueModelParams for_immersion(double depth) const {
    if (!(std::isfinite(depth) && depth > 0)) {
      throw InvalidInput("immersion depth must be positive", {"immersion"});
    }
    TorqueModelParams p = *this;
    p.tau_sat = tau_sat * depth / kReferenceImmersion;
    return p;
  }
};

struct WheelTerrainState {
  double mound = 0.0;         // [0, 1]
  double fluidization = 1.0;  // [f_min, 1], 1 = solid response
  double immersion = kReferenceImmersion;

  void validate(const TorqueModelParams& params) const {
    std::vector<std::string> bad;
    if (!(mound >= 0.0 && mound <= 1.0)) bad.emplace_back("mound");
    if (!(fluidization >= params.f_min - 1e-12 && fluidization <= 1.0 + 1e-12)) {
      bad.emplace_back("fluidization");
    }
    if (!(std::isfinite(immersion) && immersion >= 0.0)) bad.emplace_back("immersion");
    if (!bad.empty()) throw InvalidInput("invalid wheel terrain state", bad);
  }

  bool operator==(const WheelTerrainState&) const = default;
};

/// Freshly air-fluidized bed: loose (no mound) but unsheared.
inline WheelTerrainState fresh_bench_state() { return WheelTerrainState{}; }

struct SweepSpinCommand {
  double sweep_rate = 0.0;   // rad/s, positive = sweep-out
  double spin_rate = 0.0;    // rad/s
  double sweep_angle = 0.0;  // rad travelled in the current stroke

  void validate() const {
    std::vector<std::string> bad;
    if (!std::isfinite(sweep_rate)) bad.emplace_back("sweep_rate");
    if (!std::isfinite(spin_rate)) bad.emplace_back("spin_rate");
    if (!std::isfinite(sweep_angle)) bad.emplace_back("sweep_angle");
    if (!bad.empty()) throw InvalidInput("invalid sweep/spin command", bad);
  }
};

/// f(ω) = f_min + (1 − f_min) / (1 + (ω/ω_ref)²).
inline double fluidization_factor(double spin_rate, const TorqueModelParams& params) {
  require_finite(spin_rate, "spin_rate");
  const double r = spin_rate / params.omega_ref;
  return params.f_min + (1.0 - params.f_min) / (1.0 + r * r);
}

/// Fraction of the saturated torque available at this point of the stroke.
inline double mound_effective(const WheelTerrainState& state,
                              const SweepSpinCommand& cmd,
                              const TorqueModelParams& params) {
  return (1.0 - std::exp(-std::abs(cmd.sweep_angle) / params.phi_c)) *
         (0.5 + 0.5 * state.mound);
}

/// Torque the grains exert on the sweeping leg; always opposes the sweep.
inline double resistive_torque(const WheelTerrainState& state,
                               const SweepSpinCommand& cmd,
                               const TorqueModelParams& params) {
  cmd.validate();
  state.validate(params);
  if (cmd.sweep_rate == 0.0) return 0.0;
  const double sign = cmd.sweep_rate > 0.0 ? 1.0 : -1.0;
  return -sign * params.tau_sat * fluidization_factor(cmd.spin_rate, params) *
         mound_effective(state, cmd, params);
}

/// Traction from wheel spin, saturating for |ω| ≫ slip_sat.
inline double drive_thrust(double spin_rate, const WheelTerrainState& state,
                           const TorqueModelParams& params) {
  require_finite(spin_rate, "spin_rate");
  state.validate(params);
  return params.thrust_coeff * params.slip_sat *
         std::tanh(spin_rate / params.slip_sat) * (0.5 + 0.5 * state.mound);
}

/// Sweeping piles material up; spinning agitates it away.
inline WheelTerrainState mound_update(const WheelTerrainState& state,
                                      const SweepSpinCommand& cmd, double dt,
                                      const TorqueModelParams& params) {
  if (!(std::isfinite(dt) && dt > 0.0)) {
    throw InvalidInput("dt must be positive", {"dt"});
  }
  cmd.validate();
  WheelTerrainState next = state;
  next.mound = std::clamp(state.mound + params.mound_gain * std::abs(cmd.sweep_rate) * dt -
                              params.mound_decay * std::abs(cmd.spin_rate) * dt,
                          0.0, 1.0);
  next.fluidization = fluidization_factor(cmd.spin_rate, params);
  return next;
}

// ---------------------------------------------------------------------------
// Single-wheel bench
// ---------------------------------------------------------------------------

struct BenchProtocol {
  double spin_rate = 0.0;     // rad/s
  double sweep_rate = 1.0;    // rad/s
  double sweep_extent = kPi / 2.0;  // rad

  void validate() const {
    std::vector<std::string> bad;
    if (!std::isfinite(spin_rate)) bad.emplace_back("spin_rate");
    if (!std::isfinite(sweep_rate) || sweep_rate == 0.0) bad.emplace_back("sweep_rate");
    if (!std::isfinite(sweep_extent) || sweep_extent < 0.0) bad.emplace_back("sweep_extent");
    if (!bad.empty()) throw InvalidInput("invalid bench protocol", bad);
  }
};

/// Slow sweep with the wheel held still (solid manipulation).
inline BenchProtocol protocol_solid() { return {0.0, 1.0, kPi / 2.0}; }
/// Fast sweep with the wheel spinning (fluid manipulation).
inline BenchProtocol protocol_fluid() { return {11.0, 6.0, kPi / 2.0}; }

struct BenchSample {
  double t = 0.0;
  double torque = 0.0;
};

using TorqueProfile = std::vector<BenchSample>;

inline constexpr double kDefaultBenchDt = 1e-3;

/// Runs one sweep from a freshly reset bed and returns the torque read at the
/// load cell. The reading lags the quasi-static torque with first-order
/// stress relaxation (relax_time); after the sweep ends the relaxation tail
/// is recorded until the reading falls below 1% of its peak.
inline TorqueProfile single_wheel_bench(const BenchProtocol& protocol,
                                        const TorqueModelParams& params,
                                        double dt = kDefaultBenchDt) {
  protocol.validate();
  params.validate();
  if (!(std::isfinite(dt) && dt > 0.0)) {
    throw InvalidInput("dt must be positive", {"dt"});
  }
  TorqueProfile profile;
  if (protocol.sweep_extent == 0.0) return profile;

  const double sweep_time = protocol.sweep_extent / std::abs(protocol.sweep_rate);
  const auto steps = static_cast<std::size_t>(std::ceil(sweep_time / dt - 1e-9));
  const double blend =
      params.relax_time > 0.0 ? 1.0 - std::exp(-dt / params.relax_time) : 1.0;

  WheelTerrainState state = fresh_bench_state();
  double reading = 0.0;
  double peak = 0.0;
  profile.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    SweepSpinCommand cmd{protocol.sweep_rate, protocol.spin_rate,
                         std::min(protocol.sweep_extent,
                                  static_cast<double>(i + 1) * dt * std::abs(protocol.sweep_rate))};
    const double tau = resistive_torque(state, cmd, params);
    reading += (tau - reading) * blend;
    peak = std::max(peak, std::abs(reading));
    profile.push_back({static_cast<double>(i + 1) * dt, reading});
    state = mound_update(state, cmd, dt, params);
  }
  if (params.relax_time > 0.0) {
    const auto max_tail = static_cast<std::size_t>(std::ceil(20.0 * params.relax_time / dt));
    for (std::size_t i = 0; i < max_tail && std::abs(reading) >= 0.01 * peak; ++i) {
      reading -= reading * blend;
      profile.push_back({static_cast<double>(steps + i + 1) * dt, reading});
    }
  }
  return profile;
}

inline double peak_abs_torque(const TorqueProfile& profile) {
  double peak = 0.0;
  for (const auto& s : profile) peak = std::max(peak, std::abs(s.torque));
  return peak;
}

/// Total time the reading exceeds `fraction` of its own peak (sample-counted).
inline double exceedance_duration(const TorqueProfile& profile, double fraction = 0.1) {
  if (profile.size() < 2) return 0.0;
  const double dt = profile[1].t - profile[0].t;
  const double threshold = fraction * peak_abs_torque(profile);
  std::size_t count = 0;
  for (const auto& s : profile) {
    if (std::abs(s.torque) > threshold) ++count;
  }
  return static_cast<double>(count) * dt;
}

/// First time the reading reaches `fraction` of its peak; 0 for an empty profile.
inline double time_to_fraction_of_peak(const TorqueProfile& profile, double fraction) {
  const double threshold = fraction * peak_abs_torque(profile);
  for (const auto& s : profile) {
    if (std::abs(s.torque) >= threshold) return s.t;
  }
  return 0.0;
}

struct BenchComparison {
  TorqueProfile solid;
  TorqueProfile fluid;
  double peak_ratio = 0.0;
  double duration_ratio = 0.0;
  double solid_time_to_95 = 0.0;
};

inline BenchComparison compare_protocols(const BenchProtocol& solid,
                                         const BenchProtocol& fluid,
                                         const TorqueModelParams& params,
                                         double dt = kDefaultBenchDt) {
  BenchComparison out;
  out.solid = single_wheel_bench(solid, params, dt);
  out.fluid = single_wheel_bench(fluid, params, dt);
  const double peak_fluid = peak_abs_torque(out.fluid);
  const double dur_fluid = exceedance_duration(out.fluid);
  out.peak_ratio = peak_fluid > 0.0 ? peak_abs_torque(out.solid) / peak_fluid : 0.0;
  out.duration_ratio = dur_fluid > 0.0 ? exceedance_duration(out.solid) / dur_fluid : 0.0;
  out.solid_time_to_95 = time_to_fraction_of_peak(out.solid, 0.95);
  return out;
}

/// Solves for omega_ref (f_min and the rest held fixed) so the two bench
/// protocols reach `target_ratio` in peak torque. The ratio falls
/// monotonically as omega_ref grows, so bisection on a log bracket suffices.
inline double calibrate_omega_ref(TorqueModelParams params, double target_ratio = 2.0,
                                  const BenchProtocol& solid = protocol_solid(),
                                  const BenchProtocol& fluid = protocol_fluid(),
                                  double dt = kDefaultBenchDt) {
  auto ratio_at = [&](double omega_ref) {
    params.omega_ref = omega_ref;
    return compare_protocols(solid, fluid, params, dt).peak_ratio;
  };
  double lo = 1e-2;
  double hi = 1e4;
  if ((ratio_at(lo) - target_ratio) * (ratio_at(hi) - target_ratio) > 0.0) {
    throw InvalidInput("peak-ratio target not bracketed by omega_ref in [1e-2, 1e4]",
                       {"target_ratio"});
  }
  for (int i = 0; i < 200 && hi / lo > 1.0 + 1e-12; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (ratio_at(mid) > target_ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo * hi);
}

inline void write_bench_csv(std::ostream& os, const TorqueProfile& profile) {
  os << "t_s,torque_Nm\n";
  const auto old_precision = os.precision(10);
  for (const auto& s : profile) os << s.t << ',' << s.torque << '\n';
  os.precision(old_precision);
}

}  // namespace regolith::terradynamics
