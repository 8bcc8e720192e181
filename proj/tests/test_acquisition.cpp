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
#include <random>

#include "oracles.hpp"
#include "regolith/bo/acquisition.hpp"

using namespace regolith;
using namespace regolith::bo;

namespace {

GPModel small_model(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Observation> obs;
  for (int i = 0; i < 6; ++i) {
    Observation o;
    for (std::size_t k = 0; k < d; ++k) o.x.push_back(uniform01(rng));
    o.value = std::cos(5 * o.x[0]) + (d > 1 ? o.x[1] : 0.0);
    obs.push_back(o);
  }
  return gp_fit(obs, Fixed{{std::vector<double>(d, 0.2), 1.0, 1e-6, 0.0}});
}

}  // namespace

TEST(ExpectedImprovement, MatchesNumericalIntegration) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const double mu = -3 + 6 * uniform01(rng);
    const double sigma = 0.01 + 2 * uniform01(rng);
    const double best = -3 + 6 * uniform01(rng);
    EXPECT_NEAR(expected_improvement(mu, sigma, best), regolith::testing::ei_quadrature(mu, sigma, best), 1e-6);
  }
}

TEST(ExpectedImprovement, StandardNormalAtBest) {
  EXPECT_NEAR(expected_improvement(0.0, 1.0, 0.0), 0.3989422804014327, 1e-12);
}

TEST(ExpectedImprovement, ZeroSigmaLimits) {
  EXPECT_EQ(expected_improvement(2.0, 0.0, 1.5), 0.5);
  EXPECT_EQ(expected_improvement(1.0, 0.0, 1.5), 0.0);
}

TEST(ExpectedImprovement, FarTailLimits) {
  EXPECT_LT(expected_improvement(0.0, 1.0, 10.0), 1e-20);
  EXPECT_NEAR(expected_improvement(10.0, 1.0, 0.0), 10.0, 1e-12);
}

TEST(ExpectedImprovement, NonNegativeAndMonotoneInMean) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double mu = -5 + 10 * uniform01(rng), sigma = 3 * uniform01(rng);
    const double e = expected_improvement(mu, sigma, 0.0);
    EXPECT_GE(e, 0.0);
    EXPECT_GE(expected_improvement(mu + 0.1, sigma, 0.0), e);
  }
}

TEST(Propose, BeatsEveryStart) {
  const GPModel m = small_model(3, 1);
  std::mt19937_64 rng(9);
  const Proposal p = propose_next_detailed(m, rng);
  ASSERT_EQ(p.starts.size(), 256u);
  const double best = m.best_observed();
  for (const auto& s : p.starts) EXPECT_GE(p.ei, expected_improvement(m, s, best));
  EXPECT_NEAR(p.ei, expected_improvement(m, p.x, best), 1e-15);
  EXPECT_TRUE(in_unit_cube(p.x));
}

TEST(Propose, DeterministicForEngineState) {
  const GPModel m = small_model(2, 3);
  const ParamSpace space({{"a", 0, 1}, {"b", 0, 1}});
  std::mt19937_64 r1(77), r2(77);
  EXPECT_EQ(propose_next(m, space, r1), propose_next(m, space, r2));
}

TEST(Propose, FindsGridArgmaxInOneDimension) {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const GPModel m = small_model(1, seed);
    const double best = m.best_observed();
    double grid_best = -1.0, grid_x = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double x = i / 10000.0;
      const double e = expected_improvement(m, {x}, best);
      if (e > grid_best) {
        grid_best = e;
        grid_x = x;
      }
    }
    std::mt19937_64 rng(seed);
    const Proposal p = propose_next_detailed(m, rng);
    EXPECT_GE(p.ei, grid_best * (1 - 1e-6)) << "seed " << seed;
    EXPECT_NEAR(p.x[0], grid_x, 0.01) << "seed " << seed;
  }
}

TEST(Propose, DimensionMismatchRejected) {
  const GPModel m = small_model(2, 3);
  const ParamSpace space({{"a", 0, 1}});
  std::mt19937_64 rng(1);
  EXPECT_THROW(propose_next(m, space, rng), InvalidInput);
}
