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

// Normalized gait vectors for the optimizer.
//
// A dimension named "<wheel>.<field>" (for example "RR.sweep_in_rate") binds
// to that field of that wheel. Fields outside the space come from a base gait.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "regolith/bo/param_space.hpp"
#include "regolith/core.hpp"
#include "regolith/gait.hpp"
#include "regolith/gait_io.hpp"

namespace regolith::gait {

inline constexpr double kMaxSearchSpin = 12.0;  // rad/s
inline constexpr double kMinSearchSweepRate = 0.5;
inline constexpr double kMaxSearchSweepRate = 6.0;

namespace detail {

struct NamedField {
  const char* name;
  double WheelGaitParams::*member;
};

inline constexpr NamedField kSearchableFields[] = {
    {"drive_spin", &WheelGaitParams::drive_spin},
    {"sweep_amplitude", &WheelGaitParams::sweep_amplitude},
    {"sweep_out_rate", &WheelGaitParams::sweep_out_rate},
    {"sweep_in_rate", &WheelGaitParams::sweep_in_rate},
    {"spin_during_sweep_out", &WheelGaitParams::spin_during_sweep_out},
    {"spin_during_sweep_in", &WheelGaitParams::spin_during_sweep_in},
    {"leg_extension", &WheelGaitParams::leg_extension},
    {"sweep_in_lift", &WheelGaitParams::sweep_in_lift},
    {"phase_offset", &WheelGaitParams::phase_offset},
};

struct Binding {
  Wheel wheel;
  double WheelGaitParams::*member;
  bool is_phase;
};

inline Binding bind(const std::string& dim_name) {
  const auto dot = dim_name.find('.');
  if (dot == std::string::npos) {
    throw InvalidInput("dimension name must look like '<wheel>.<field>'", {dim_name});
  }
  const std::string field = dim_name.substr(dot + 1);
  Wheel w;
  try {
    w = wheel_from_name(dim_name.substr(0, dot));
  } catch (const NotFound&) {
    throw InvalidInput("dimension names an unknown wheel", {dim_name});
  }
  for (const auto& f : kSearchableFields) {
    if (field == f.name) return {w, f.member, field == "phase_offset"};
  }
  throw InvalidInput("dimension names an unknown gait field", {dim_name});
}

}  // namespace detail

/// The default 22-dimensional search space: every wheel's continuous spin,
/// the rear legs' sweep amplitude, rates, stroke spins, recovery lift and
/// phase, and every leg's extension. Spin direction is carried by the sign
/// of the spin ranges.
inline bo::ParamSpace default_gait_space() {
  using bo::Dim;
  std::vector<Dim> dims;
  for (const char* w : {"FL", "FR", "RL", "RR"}) {
    dims.push_back({std::string(w) + ".drive_spin", -kMaxSearchSpin, kMaxSearchSpin});
  }
  for (const char* w : {"RL", "RR"}) {
    const std::string p(w);
    dims.push_back({p + ".sweep_amplitude", 0.0, kMaxSweepAmplitude});
    dims.push_back({p + ".sweep_out_rate", kMinSearchSweepRate, kMaxSearchSweepRate});
    dims.push_back({p + ".sweep_in_rate", kMinSearchSweepRate, kMaxSearchSweepRate});
    dims.push_back({p + ".spin_during_sweep_out", -kMaxSearchSpin, kMaxSearchSpin});
    dims.push_back({p + ".spin_during_sweep_in", -kMaxSearchSpin, kMaxSearchSpin});
    dims.push_back({p + ".sweep_in_lift", 0.0, 1.0});
    dims.push_back({p + ".phase_offset", 0.0, 1.0});
  }
  for (const char* w : {"FL", "FR", "RL", "RR"}) {
    dims.push_back({std::string(w) + ".leg_extension", 0.0, 1.0});
  }
  return bo::ParamSpace(std::move(dims));
}

/// Gait to unit vector. Throws RangeError naming every searched field that
/// falls outside its bounds.
inline std::vector<double> encode(const GaitParams& gait, const bo::ParamSpace& space) {
  std::vector<double> values;
  values.reserve(space.d());
  for (const auto& dim : space.dims()) {
    const auto b = detail::bind(dim.name);
    values.push_back(gait[b.wheel].*(b.member));
  }
  return space.normalize(values);
}

/// Unit vector to gait; unsearched fields are copied from `base`. A phase
/// coordinate of exactly 1 wraps to 0.
inline GaitParams decode(const std::vector<double>& x, const bo::ParamSpace& space,
                         const GaitParams& base) {
  const std::vector<double> values = space.denormalize(x);
  GaitParams g = base;
  g.label = "custom";
  for (std::size_t i = 0; i < space.d(); ++i) {
    const auto b = detail::bind(space[i].name);
    double v = values[i];
    if (b.is_phase) v -= std::floor(v);
    g[b.wheel].*(b.member) = v;
  }
  g.validate();
  return g;
}

inline GaitParams decode(const std::vector<double>& x, const bo::ParamSpace& space) {
  return decode(x, space, preset(Preset::kTrrp));
}

}  // namespace regolith::gait
