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

#include <sstream>

#include "oracles.hpp"
#include "regolith/bo/campaign.hpp"

using namespace regolith;
using namespace regolith::bo;

namespace {

Evaluator quadratic(double a, double b) {
  return [=](const std::vector<double>& x) {
    return EvalResult{-((x[0] - a) * (x[0] - a) + (x[1] - b) * (x[1] - b)), false};
  };
}

CampaignConfig quadratic_config(std::uint64_t seed) {
  CampaignConfig c;
  c.rng_seed = seed;
  c.seed_points = {{0.5, 0.5}};
  return c;
}

}  // namespace

TEST(Campaign, SourcesFollowSeedRandomModelOrder) {
  const auto log = run_campaign(quadratic(0.2, 0.7), quadratic_config(1), 2);
  ASSERT_EQ(log.records.size(), 30u);
  EXPECT_EQ(log.records[0].source, Source::kSeed);
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(log.records[i].source, Source::kRandom);
  int model = 0;
  for (const auto& r : log.records) {
    model += r.source == Source::kModel ? 1 : 0;
    EXPECT_TRUE(in_unit_cube(r.obs.x));
    if (r.source == Source::kModel) {
      EXPECT_TRUE(r.hyper);
      EXPECT_TRUE(r.acquisition_value);
    }
  }
  EXPECT_EQ(model, 25);
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    EXPECT_EQ(log.records[i].iteration, static_cast<int>(i));
  }
}

TEST(Campaign, FindsQuadraticOptimumOnGrid) {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const double a = uniform01(rng), b = uniform01(rng);
    const auto log = run_campaign(quadratic(a, b), quadratic_config(seed), 2);
    const double grid = regolith::testing::grid_max_2d(
        [&](double u, double v) { return -((u - a) * (u - a) + (v - b) * (v - b)); });
    hits += grid - log.best()->value <= 0.05 ? 1 : 0;
  }
  EXPECT_GE(hits, 9);
}

TEST(Campaign, BestTraceIsMonotone) {
  const auto log = run_campaign(quadratic(0.9, 0.1), quadratic_config(4), 2);
  const auto trace = log.best_trace();
  ASSERT_EQ(trace.size(), 30u);
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_GE(trace[i], trace[i - 1]);
  EXPECT_EQ(trace.back(), log.best()->value);
}

TEST(Campaign, AllFailuresFallBackToRandomPoints) {
  CampaignConfig c = quadratic_config(2);
  const auto log = run_campaign(
      [](const std::vector<double>&) { return EvalResult{0.0, true}; }, c, 2);
  EXPECT_EQ(log.records.size(), 30u);
  EXPECT_EQ(log.failures(), 30);
  EXPECT_TRUE(log.best_trace().empty());
  EXPECT_FALSE(log.best());
  for (std::size_t i = 5; i < 30; ++i) {
    EXPECT_EQ(log.records[i].source, Source::kRandomFallback);
    EXPECT_TRUE(in_unit_cube(log.records[i].obs.x));
  }
  EXPECT_TRUE(summary_json(log).at("best").is_null());
}

TEST(Campaign, EvaluatorExceptionsAreRecordedFailures) {
  int calls = 0;
  const Evaluator flaky = [&](const std::vector<double>& x) {
    if (++calls % 3 == 0) throw std::runtime_error("rig fault");
    return quadratic(0.3, 0.3)(x);
  };
  CampaignConfig c = quadratic_config(3);
  c.budget = 12;
  const auto log = run_campaign(flaky, c, 2);
  ASSERT_EQ(log.records.size(), 12u);
  EXPECT_EQ(log.failures(), 4);
  EXPECT_EQ(log.records[2].error, "rig fault");
  EXPECT_TRUE(log.records[2].obs.failed);
}

TEST(Campaign, NonFiniteValuesAreFailures) {
  CampaignConfig c = quadratic_config(3);
  c.budget = 3;
  c.n_random = 2;
  const auto log = run_campaign(
      [](const std::vector<double>&) { return EvalResult{NAN, false}; }, c, 2);
  EXPECT_EQ(log.failures(), 3);
}

TEST(Campaign, ReplayIsByteIdentical) {
  const auto a = to_jsonl(run_campaign(quadratic(0.6, 0.4), quadratic_config(9), 2));
  const auto b = to_jsonl(run_campaign(quadratic(0.6, 0.4), quadratic_config(9), 2));
  EXPECT_EQ(a, b);
  const auto c = to_jsonl(run_campaign(quadratic(0.6, 0.4), quadratic_config(10), 2));
  EXPECT_NE(a, c);
}

TEST(Campaign, ResumedRunMatchesUninterrupted) {
  const CampaignConfig full = quadratic_config(5);
  CampaignConfig partial = full;
  partial.budget = 11;
  const auto first = run_campaign(quadratic(0.1, 0.8), partial, 2);
  std::istringstream in(to_jsonl(first));
  const auto resumed = run_campaign(quadratic(0.1, 0.8), full, 2, log_from_jsonl(in));
  EXPECT_EQ(to_jsonl(resumed), to_jsonl(run_campaign(quadratic(0.1, 0.8), full, 2)));
}

TEST(Campaign, StopFlagEndsEarly) {
  std::atomic<bool> stop{false};
  CampaignHooks hooks;
  hooks.stop = &stop;
  int seen = 0;
  hooks.on_record = [&](const IterationRecord&) {
    if (++seen == 7) stop = true;
  };
  const auto log = run_campaign(quadratic(0.5, 0.5), quadratic_config(1), 2, {}, hooks);
  EXPECT_EQ(log.records.size(), 7u);
}

TEST(Campaign, PenaltyPolicyFeedsFailuresToModel) {
  CampaignConfig c = quadratic_config(6);
  c.budget = 10;
  c.failure_policy = FailurePolicy::penalty(-5.0);
  const Evaluator half_fail = [](const std::vector<double>& x) {
    return EvalResult{-x[0], x[0] > 0.5};
  };
  const auto log = run_campaign(half_fail, c, 2);
  for (const auto& r : log.records) {
    if (r.obs.failed) {
      EXPECT_EQ(r.obs.value, 0.0);
    }
  }
  EXPECT_GT(log.failures(), 0);
  const auto train = detail::fitting_set(log.records, c.failure_policy);
  EXPECT_EQ(train.size(), 10u);
  const auto omitted = detail::fitting_set(log.records, FailurePolicy::omit());
  EXPECT_EQ(omitted.size(), 10u - static_cast<std::size_t>(log.failures()));
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    if (log.records[i].obs.failed) EXPECT_EQ(train[i].value, -5.0);
  }
}

TEST(Campaign, InvalidConfigurationNamesFields) {
  CampaignConfig c;
  c.budget = 2;
  c.n_random = 4;
  c.seed_points = {{0.5, 2.0}};
  try {
    run_campaign(quadratic(0, 0), c, 2);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_EQ(e.fields(), (std::vector<std::string>{"budget", "seed_points"}));
  }
  EXPECT_THROW(run_campaign(quadratic(0, 0), CampaignConfig{}, 0), InvalidInput);
}

TEST(Campaign, ResumeRejectsForeignLogs) {
  auto log = run_campaign(quadratic(0.5, 0.5), quadratic_config(1), 2);
  EXPECT_THROW(run_campaign(quadratic(0.5, 0.5), quadratic_config(1), 3, log), InvalidInput);
  log.records.erase(log.records.begin() + 3);
  EXPECT_THROW(run_campaign(quadratic(0.5, 0.5), quadratic_config(1), 2, log), InvalidInput);
}

TEST(CampaignLogJson, RoundTripsExactly) {
  CampaignConfig c = quadratic_config(8);
  c.budget = 12;
  int calls = 0;
  const Evaluator ev = [&](const std::vector<double>& x) {
    if (++calls == 4) throw std::runtime_error("boom");
    return quadratic(0.2, 0.2)(x);
  };
  const auto log = run_campaign(ev, c, 2);
  const std::string text = to_jsonl(log);
  std::istringstream in(text);
  const auto back = log_from_jsonl(in);
  EXPECT_EQ(back, log);
  EXPECT_EQ(to_jsonl(back), text);
  EXPECT_EQ(text.find("wall_time"), std::string::npos);
}

TEST(CampaignLogJson, BadLinesNameTheirLocation) {
  std::istringstream in("{\"schema_version\":1}\nnot json\n");
  try {
    log_from_jsonl(in, "log.jsonl");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.fields(), std::vector<std::string>{"log.jsonl"});
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
  std::istringstream wrong_version("{\"schema_version\":7}\n");
  EXPECT_THROW(log_from_jsonl(wrong_version), InvalidInput);
}

TEST(CampaignLogJson, SummaryNamesBestPoint) {
  const auto log = run_campaign(quadratic(0.5, 0.5), quadratic_config(1), 2);
  const auto s = summary_json(log);
  EXPECT_EQ(s.at("iterations"), 30);
  EXPECT_EQ(s.at("best").at("value").get<double>(), log.best()->value);
  EXPECT_EQ(s.at("schema_version"), kSchemaVersion);
}
