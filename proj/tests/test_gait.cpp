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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "regolith/gait.hpp"
#include "regolith/gait_io.hpp"
#include "regolith/gait_space.hpp"

using namespace regolith;
using gait::GaitParams;
using gait::Preset;

namespace {

GaitParams random_gait(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GaitParams g;
  for (Wheel w : kAllWheels) {
    auto& p = g[w];
    p.drive_spin = -12.0 + 24.0 * u(rng);
    p.sweep_amplitude = u(rng) < 0.3 ? 0.0 : gait::kMaxSweepAmplitude * u(rng);
    p.sweep_out_rate = 0.5 + 5.5 * u(rng);
    p.sweep_in_rate = 0.5 + 5.5 * u(rng);
    p.spin_during_sweep_out = -12.0 + 24.0 * u(rng);
    p.spin_during_sweep_in = -12.0 + 24.0 * u(rng);
    p.leg_extension = u(rng);
    p.sweep_in_lift = u(rng);
    p.phase_offset = u(rng);
  }
  return g;
}

}  // namespace

TEST(Commands, NegativeTimeRejected) {
  EXPECT_THROW(gait::commands_at(gait::preset(Preset::kTrrp), -0.1), InvalidInput);
  EXPECT_THROW(gait::commands_at(gait::preset(Preset::kTrrp), std::nan("")), InvalidInput);
}

TEST(Commands, TrrpRearWheelsStartSweepOutTogetherWithRightSpinHalted) {
  const auto cmd = gait::commands_at(gait::preset(Preset::kTrrp), 0.0);
  EXPECT_GT(cmd[Wheel::kRL].sweep_rate, 0.0);
  EXPECT_GT(cmd[Wheel::kRR].sweep_rate, 0.0);
  EXPECT_EQ(cmd[Wheel::kRR].spin_rate, 0.0);
}

TEST(Commands, BoRrpRearPhasesAlternate) {
  const auto g = gait::preset(Preset::kBoRrp);
  EXPECT_DOUBLE_EQ(std::abs(g[Wheel::kRL].phase_offset - g[Wheel::kRR].phase_offset), 0.5);
  EXPECT_DOUBLE_EQ(g[Wheel::kRL].sweep_amplitude, deg_to_rad(100.0));
  const auto cmd = gait::commands_at(g, 0.25);
  EXPECT_LT(cmd[Wheel::kRL].sweep_rate * cmd[Wheel::kRR].sweep_rate, 0.0);
}

TEST(Commands, PeriodicForRandomGaits) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(0.0, 500.0);
  for (int i = 0; i < 100; ++i) {
    const GaitParams g = random_gait(rng);
    g.validate();
    const double period = gait::cycle_period(g);
    for (Wheel w : kAllWheels) {
      const double tw = gait::wheel_period(g, w);
      for (int k = 0; k < 100; ++k) {
        const double t0 = t(rng);
        const auto a = gait::wheel_command_at(g, w, t0);
        const auto b = gait::wheel_command_at(g, w, t0 + tw);
        EXPECT_EQ(a.sweep_rate, b.sweep_rate);
        EXPECT_EQ(a.spin_rate, b.spin_rate);
        EXPECT_NEAR(a.sweep_angle, b.sweep_angle, 1e-9 * std::max(1.0, tw));
      }
    }
    EXPECT_GT(period, 0.0);
  }
}

TEST(Commands, SweepAngleWithinAmplitudeAndContinuous) {
  const double dt = 1e-3;
  for (Preset p : gait::kAllPresets) {
    const GaitParams g = gait::preset(p);
    for (Wheel w : kAllWheels) {
      const auto& wp = g[w];
      const double max_rate = std::max(wp.sweep_out_rate, wp.sweep_in_rate);
      double prev = gait::wheel_command_at(g, w, 0.0).sweep_angle;
      for (int i = 1; i < 20000; ++i) {
        const auto c = gait::wheel_command_at(g, w, i * dt);
        EXPECT_GE(c.sweep_angle, 0.0);
        EXPECT_LE(c.sweep_angle, wp.sweep_amplitude + 1e-12);
        EXPECT_LE(std::abs(c.sweep_angle - prev), max_rate * dt + 1e-9)
            << gait::preset_name(p) << " " << wheel_name(w) << " t=" << i * dt;
        prev = c.sweep_angle;
      }
    }
  }
}

TEST(Commands, NonSweepingWheelEmitsDriveSpin) {
  const auto g = gait::preset(Preset::kDs);
  for (double t : {0.0, 1.3, 77.0}) {
    const auto cmd = gait::commands_at(g, t);
    for (Wheel w : kAllWheels) {
      EXPECT_EQ(cmd[w].spin_rate, g[w].drive_spin);
      EXPECT_EQ(cmd[w].sweep_rate, 0.0);
    }
  }
}

TEST(Commands, ZeroAmplitudeWheelsInheritLongestPeriod) {
  const auto g = gait::preset(Preset::kSingleRrp);
  const auto& rr = g[Wheel::kRR];
  const double own = rr.sweep_amplitude / rr.sweep_out_rate + rr.sweep_amplitude / rr.sweep_in_rate;
  EXPECT_DOUBLE_EQ(gait::wheel_period(g, Wheel::kFL), own);
  EXPECT_DOUBLE_EQ(gait::cycle_period(g), own);
  EXPECT_DOUBLE_EQ(gait::cycle_period(gait::preset(Preset::kDs)), 1.0);
}

TEST(Presets, DocumentedShapes) {
  const auto trrp = gait::preset(Preset::kTrrp);
  EXPECT_EQ(trrp[Wheel::kRR].spin_during_sweep_out, 0.0);
  EXPECT_DOUBLE_EQ(trrp[Wheel::kRR].sweep_amplitude, deg_to_rad(100.0));

  const auto ds = gait::preset(Preset::kDs);
  EXPECT_LT(ds[Wheel::kFL].drive_spin * ds[Wheel::kFR].drive_spin, 0.0);
  EXPECT_EQ(ds[Wheel::kFL].drive_spin, ds[Wheel::kRL].drive_spin);
  EXPECT_EQ(ds[Wheel::kFR].drive_spin, ds[Wheel::kRR].drive_spin);

  const auto single = gait::preset(Preset::kSingleRrp);
  for (Wheel w : {Wheel::kFL, Wheel::kFR, Wheel::kRL}) EXPECT_FALSE(single[w].sweeps());
  EXPECT_TRUE(single[Wheel::kRR].sweeps());
  EXPECT_NE(single[Wheel::kRR].spin_during_sweep_out, 0.0);

  const auto bo_trrp = gait::preset(Preset::kBoTrrp);
  for (Wheel w : {Wheel::kFL, Wheel::kFR, Wheel::kRL}) EXPECT_EQ(bo_trrp[w], ds[w]);
  EXPECT_EQ(bo_trrp[Wheel::kRR], single[Wheel::kRR]);

  const auto ml = gait::preset(Preset::kMlInspired);
  const auto& ml_rr = ml[Wheel::kRR];
  EXPECT_GT(ml_rr.spin_during_sweep_in, trrp[Wheel::kRR].spin_during_sweep_in);
  EXPECT_GT(ml_rr.spin_during_sweep_in, bo_trrp[Wheel::kRR].spin_during_sweep_in);
  EXPECT_EQ(ml_rr.spin_during_sweep_out, 0.0);
  EXPECT_LT(ml_rr.sweep_out_rate, bo_trrp[Wheel::kRR].sweep_out_rate);
  EXPECT_GT(ml_rr.sweep_in_rate, bo_trrp[Wheel::kRR].sweep_in_rate);
  for (Wheel w : {Wheel::kFL, Wheel::kFR, Wheel::kRL}) {
    EXPECT_GT(std::abs(ml[w].drive_spin), std::abs(bo_trrp[w].drive_spin));
    EXPECT_EQ(std::signbit(ml[w].drive_spin), std::signbit(bo_trrp[w].drive_spin));
  }
  EXPECT_GT(ml[Wheel::kFL].leg_extension, gait::kNeutralExtension);
  EXPECT_GT(ml[Wheel::kRL].leg_extension, gait::kNeutralExtension);
  EXPECT_LT(ml[Wheel::kFR].leg_extension, gait::kNeutralExtension);
  EXPECT_LT(ml[Wheel::kRR].leg_extension, gait::kNeutralExtension);
  EXPECT_EQ(ml.posture, gait::PostureMode::kYawScheduled);
}

TEST(Presets, UnknownNameIsNotFound) {
  EXPECT_THROW(gait::preset("HOVER"), NotFound);
}

TEST(Presets, CatalogCarriesVersionAndAllNames) {
  const auto& cat = gait::builtin_catalog();
  EXPECT_FALSE(cat.version.empty());
  for (Preset p : gait::kAllPresets) {
    EXPECT_EQ(cat.get(gait::preset_name(p)).label, gait::preset_name(p));
  }
}

TEST(Presets, CatalogFileMatchesCompiledCopy) {
  const auto from_file = gait::load_catalog_file(REGOLITH_SOURCE_DIR "/data/gait_presets.json");
  EXPECT_EQ(from_file.version, gait::builtin_catalog().version);
  EXPECT_EQ(from_file.gaits, gait::builtin_catalog().gaits);
}

TEST(Mirror, InvolutionOnPresets) {
  for (Preset p : gait::kAllPresets) {
    const auto g = gait::preset(p);
    EXPECT_EQ(gait::mirror(gait::mirror(g)), g);
  }
}

TEST(Mirror, DsSpinSignsFlipRelativeToSide) {
  const auto ds = gait::preset(Preset::kDs);
  const auto m = gait::mirror(ds);
  for (Wheel w : kAllWheels) {
    EXPECT_EQ(m[w].drive_spin, -ds[w].drive_spin);
  }
}

TEST(Mirror, SymmetricStraightGaitIsFixedPoint) {
  GaitParams g;
  for (Wheel w : kAllWheels) g[w].drive_spin = 3.0;
  g[Wheel::kRL].sweep_amplitude = g[Wheel::kRR].sweep_amplitude = 1.0;
  EXPECT_EQ(gait::mirror(g), g);
}

TEST(Posture, ConstantModeUntouched) {
  const auto g = gait::preset(Preset::kTrrp);
  const auto cmd = gait::commands_at(g, 0.4);
  EXPECT_EQ(gait::apply_posture(cmd, g, 1.0), cmd);
}

TEST(Posture, ScheduledModeBlendsWithYaw) {
  const auto g = gait::preset(Preset::kMlInspired);
  const auto cmd = gait::commands_at(g, 0.0);
  const auto up = gait::apply_posture(cmd, g, 0.0);
  const auto across = gait::apply_posture(cmd, g, kPi / 2);
  for (Wheel w : kAllWheels) {
    EXPECT_DOUBLE_EQ(up[w].leg_extension, gait::kNeutralExtension);
    EXPECT_DOUBLE_EQ(across[w].leg_extension, g[w].leg_extension);
  }
}

TEST(GaitJson, RoundTripAllPresets) {
  for (Preset p : gait::kAllPresets) {
    const auto g = gait::preset(p);
    EXPECT_EQ(gait::gait_from_json(gait::to_json(g)), g);
  }
}

TEST(GaitJson, UnitsInFieldNamesAndSchemaVersion) {
  const auto j = gait::to_json(gait::preset(Preset::kTrrp));
  EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
  EXPECT_TRUE(j.at("wheels").at("RR").contains("sweep_out_rate_rad_s"));
}

TEST(GaitJson, RejectsMissingSchemaUnknownFieldsAndMissingWheels) {
  auto j = gait::to_json(gait::preset(Preset::kTrrp));
  auto no_schema = j;
  no_schema.erase("schema_version");
  EXPECT_THROW(gait::gait_from_json(no_schema), InvalidInput);

  auto typo = j;
  typo["wheels"]["RR"]["sweep_rate"] = 1.0;
  try {
    gait::gait_from_json(typo);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_EQ(e.fields(), std::vector<std::string>{"RR.sweep_rate"});
  }

  auto missing = j;
  missing["wheels"].erase("FL");
  EXPECT_THROW(gait::gait_from_json(missing), InvalidInput);
}

TEST(GaitJson, InvalidValuesNamed) {
  auto j = gait::to_json(gait::preset(Preset::kTrrp));
  j["wheels"]["RL"]["leg_extension_frac"] = 1.5;
  try {
    gait::gait_from_json(j);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_EQ(e.fields(), std::vector<std::string>{"RL.leg_extension"});
  }
}

TEST(GaitJson, MissingFileIsIoErrorWithPath) {
  try {
    gait::load_gait_file("/nonexistent/gait.json");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.fields(), std::vector<std::string>{"/nonexistent/gait.json"});
  }
}

TEST(GaitSpace, DefaultSpaceHas22Dimensions) {
  EXPECT_EQ(gait::default_gait_space().d(), 22u);
}

TEST(GaitSpace, TrrpRoundTrip) {
  const auto space = gait::default_gait_space();
  const auto g = gait::preset(Preset::kTrrp);
  const auto back = gait::decode(gait::encode(g, space), space, g);
  for (Wheel w : kAllWheels) {
    EXPECT_NEAR(back[w].sweep_out_rate, g[w].sweep_out_rate, 1e-12);
    EXPECT_NEAR(back[w].spin_during_sweep_out, g[w].spin_during_sweep_out, 1e-12);
    EXPECT_NEAR(back[w].drive_spin, g[w].drive_spin, 1e-12);
  }
}

TEST(GaitSpace, RoundTripThousandRandomGaits) {
  const auto space = gait::default_gait_space();
  std::mt19937_64 rng(21);
  for (int i = 0; i < 1000; ++i) {
    const GaitParams g = random_gait(rng);
    const GaitParams back = gait::decode(gait::encode(g, space), space, g);
    for (Wheel w : kAllWheels) {
      const auto& a = g[w];
      const auto& b = back[w];
      EXPECT_NEAR(a.drive_spin, b.drive_spin, 1e-9);
      EXPECT_NEAR(a.sweep_amplitude, b.sweep_amplitude, 1e-9);
      EXPECT_NEAR(a.sweep_out_rate, b.sweep_out_rate, 1e-9);
      EXPECT_NEAR(a.sweep_in_rate, b.sweep_in_rate, 1e-9);
      EXPECT_NEAR(a.spin_during_sweep_out, b.spin_during_sweep_out, 1e-9);
      EXPECT_NEAR(a.spin_during_sweep_in, b.spin_during_sweep_in, 1e-9);
      EXPECT_NEAR(a.leg_extension, b.leg_extension, 1e-9);
      EXPECT_NEAR(a.sweep_in_lift, b.sweep_in_lift, 1e-9);
      EXPECT_NEAR(a.phase_offset, b.phase_offset, 1e-9);
    }
  }
}

TEST(GaitSpace, LowerBoundAndMidpointGaits) {
  const auto space = gait::default_gait_space();
  GaitParams lower = gait::preset(Preset::kTrrp);
  GaitParams mid = lower;
  for (const auto& dim : space.dims()) {
    const auto dot = dim.name.find('.');
    const Wheel w = wheel_from_name(dim.name.substr(0, dot));
    const std::string field = dim.name.substr(dot + 1);
    for (const auto& f : gait::detail::kSearchableFields) {
      if (field == f.name) {
        lower[w].*(f.member) = dim.lower;
        mid[w].*(f.member) = 0.5 * (dim.lower + dim.upper);
      }
    }
  }
  for (double v : gait::encode(lower, space)) EXPECT_EQ(v, 0.0);
  for (double v : gait::encode(mid, space)) EXPECT_NEAR(v, 0.5, 1e-15);
}

TEST(GaitSpace, OutOfBoundsListsOffendingFields) {
  const auto space = gait::default_gait_space();
  GaitParams g = gait::preset(Preset::kTrrp);
  g[Wheel::kFL].drive_spin = 40.0;
  g[Wheel::kRR].sweep_in_rate = 0.1;
  try {
    gait::encode(g, space);
    FAIL();
  } catch (const RangeError& e) {
    EXPECT_EQ(e.fields(), (std::vector<std::string>{"FL.drive_spin", "RR.sweep_in_rate"}));
  }
  std::vector<double> x(space.d(), 0.5);
  x[3] = 1.2;
  x[7] = -0.1;
  try {
    gait::decode(x, space);
    FAIL();
  } catch (const RangeError& e) {
    EXPECT_EQ(e.fields(), (std::vector<std::string>{space[3].name, space[7].name}));
  }
}

TEST(GaitSpace, PhaseOfOneWraps) {
  const auto space = gait::default_gait_space();
  std::vector<double> x(space.d(), 1.0);
  const auto g = gait::decode(x, space);
  EXPECT_EQ(g[Wheel::kRL].phase_offset, 0.0);
  EXPECT_NO_THROW(g.validate());
}

TEST(ParamSpaceTest, SignDimensionsAreTwoValued) {
  bo::ParamSpace s({{"FL.drive_spin", -4.0, 4.0, bo::DimKind::kSign}});
  EXPECT_EQ(s.denormalize({0.2})[0], -4.0);
  EXPECT_EQ(s.denormalize({0.5})[0], 4.0);
  EXPECT_EQ(s.normalize({4.0})[0], 1.0);
  EXPECT_THROW(s.normalize({1.0}), RangeError);
}

TEST(ParamSpaceTest, InvalidDimensionsRejected) {
  EXPECT_THROW(bo::ParamSpace({{"a", 1.0, 1.0}}), InvalidInput);
  EXPECT_THROW(bo::ParamSpace({{"a", 0.0, 1.0}, {"a", 0.0, 2.0}}), InvalidInput);
  bo::ParamSpace bad_binding({{"XX.drive_spin", 0.0, 1.0}});
  EXPECT_THROW(gait::encode(gait::preset(Preset::kTrrp), bad_binding), InvalidInput);
}
