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

// Reference computations shared by the unit tests and the acceptance binary.
// None of them call into the code they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "regolith/bo/gp.hpp"
#include "regolith/core.hpp"

namespace regolith::testing {

/// E[max(f - best, 0)] for f ~ N(mu, sigma^2) by composite Simpson's rule
/// over mu ± 12 sigma.
inline double ei_quadrature(double mu, double sigma, double best) {
  const int n = 20000;
  const double lo = mu - 12 * sigma, hi = mu + 12 * sigma;
  const double h = (hi - lo) / n;
  auto f = [&](double v) {
    const double z = (v - mu) / sigma;
    return std::max(v - best, 0.0) * std::exp(-0.5 * z * z) / (sigma * std::sqrt(2 * kPi));
  };
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += f(lo + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

struct Dataset {
  std::vector<bo::Observation> obs;
  double lengthscale = 0.1;
};

/// Random design in [0,1]^d with points at least 0.05 apart, lengthscale in
/// [0.05, 0.2]. Keeps the kernel matrix well enough conditioned for
/// interpolation to be checked at double precision.
inline Dataset random_dataset(std::mt19937_64& rng, std::size_t d) {
  Dataset ds;
  const std::size_t n = 2 + static_cast<std::size_t>(uniform01(rng) * 11);
  ds.lengthscale = 0.05 + 0.15 * uniform01(rng);
  while (ds.obs.size() < n) {
    bo::Observation o;
    for (std::size_t k = 0; k < d; ++k) o.x.push_back(uniform01(rng));
    bool separated = true;
    for (const auto& p : ds.obs) {
      double r2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) r2 += (p.x[k] - o.x[k]) * (p.x[k] - o.x[k]);
      if (r2 < 0.05 * 0.05) separated = false;
    }
    if (!separated) continue;
    o.value = std::sin(6.0 * o.x[0]) + 0.5 * uniform01(rng);
    ds.obs.push_back(o);
  }
  return ds;
}

/// Maximum of f over the 200 x 200 grid of [0,1]^2, endpoints included.
template <typename F>
double grid_max_2d(F f) {
  double best = -INFINITY;
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 200; ++j) best = std::max(best, f(i / 199.0, j / 199.0));
  }
  return best;
}

}  // namespace regolith::testing
