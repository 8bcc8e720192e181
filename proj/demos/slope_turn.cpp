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

// Turns every preset on the default 25 degree slope, then lets a short
// optimization campaign look for something faster than TRRP.

#include <cstdio>

#include "regolith/bo/campaign.hpp"
#include "regolith/gait_io.hpp"
#include "regolith/gait_space.hpp"
#include "regolith/slope_sim.hpp"

using namespace regolith;

int main() {
  const sim::SlopeConfig slope;
  sim::EpisodeConfig episode;

  std::printf("%-12s %-16s %10s %12s\n", "gait", "outcome", "t90 (s)", "yaw (deg)");
  for (auto p : gait::kAllPresets) {
    const auto r = sim::run_episode(gait::preset(p), slope, episode);
    std::printf("%-12s %-16s %10s %12.1f\n", std::string(gait::preset_name(p)).c_str(),
                std::string(sim::to_string(r.outcome)).c_str(),
                r.time_to_target ? std::to_string(*r.time_to_target).substr(0, 7).c_str() : "-",
                rad_to_deg(r.final_yaw));
  }

  const auto space = gait::default_gait_space();
  const auto base = gait::preset(gait::Preset::kTrrp);
  sim::EpisodeConfig eval = episode;
  eval.duration = 120.0;
  eval.stop_at_target = true;

  bo::CampaignConfig cfg;
  cfg.budget = 15;
  cfg.seed_points = {gait::encode(base, space)};
  cfg.rng_seed = 1;
  const auto log = bo::run_campaign(
      [&](const std::vector<double>& x) {
        const auto r = sim::run_episode(gait::decode(x, space, base), slope, eval);
        return bo::EvalResult{r.final_yaw, r.failed()};
      },
      cfg, space.d());

  std::printf("\ncampaign: %zu evaluations, %d failed\n", log.records.size(), log.failures());
  if (const auto best = log.best()) {
    const auto r = sim::run_episode(gait::decode(best->x, space, base), slope, episode);
    std::printf("best gait (iteration %d) reaches 90 deg in %s s\n", best->iteration,
                r.time_to_target ? std::to_string(*r.time_to_target).substr(0, 7).c_str() : "-");
  }
  return 0;
}
