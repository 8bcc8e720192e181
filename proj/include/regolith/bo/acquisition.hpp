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

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "regolith/bo/gp.hpp"
#include "regolith/bo/param_space.hpp"
#include "regolith/core.hpp"

namespace regolith::bo {

inline double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Expected improvement of a Gaussian N(mu, sigma^2) over `best`.
inline double expected_improvement(double mu, double sigma, double best) {
  const double diff = mu - best;
  if (!(sigma > 0.0)) return std::max(diff, 0.0);
  const double z = diff / sigma;
  return std::max(0.0, diff * normal_cdf(z) + sigma * normal_pdf(z));
}

inline double expected_improvement(const GPModel& model, const std::vector<double>& x,
                                   double best) {
  const Posterior p = gp_posterior(model, x);
  return expected_improvement(p.mean, std::sqrt(p.variance), best);
}

struct ProposeOptions {
  int starts = 256;
  int refine_top = 8;
  double initial_step = 0.1;
  double min_step = 1e-4;
  int max_sweeps = 400;
};

struct Proposal {
  std::vector<double> x;
  double ei = 0.0;
  std::vector<std::vector<double>> starts;  // the uniform start points, in draw order
};

/// Maximizes EI over the unit cube: uniform random starts, then coordinate-wise
/// pattern search from the best few. Deterministic for a given engine state.
template <typename Engine>
Proposal propose_next_detailed(const GPModel& model, Engine& rng,
                               const ProposeOptions& opt = {}) {
  const std::size_t d = model.d();
  const double best = model.best_observed();
  auto ei = [&](const std::vector<double>& x) { return expected_improvement(model, x, best); };

  Proposal out;
  std::vector<std::pair<double, std::size_t>> scored;
  for (int s = 0; s < opt.starts; ++s) {
    std::vector<double> x(d);
    for (auto& v : x) v = uniform01(rng);
    scored.emplace_back(ei(x), out.starts.size());
    out.starts.push_back(std::move(x));
  }
  // Stable order: higher EI first, earlier draw breaks ties.
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  out.x = out.starts.empty() ? std::vector<double>(d, 0.5) : out.starts[scored[0].second];
  out.ei = out.starts.empty() ? ei(out.x) : scored[0].first;
  const int n_refine = std::min<int>(opt.refine_top, static_cast<int>(scored.size()));
  for (int r = 0; r < n_refine; ++r) {
    std::vector<double> x = out.starts[scored[static_cast<std::size_t>(r)].second];
    double fx = scored[static_cast<std::size_t>(r)].first;
    double step = opt.initial_step;
    for (int sweep = 0; sweep < opt.max_sweeps && step >= opt.min_step; ++sweep) {
      bool improved = false;
      for (std::size_t k = 0; k < d; ++k) {
        for (double dir : {1.0, -1.0}) {
          std::vector<double> cand = x;
          cand[k] = std::clamp(x[k] + dir * step, 0.0, 1.0);
          if (cand[k] == x[k]) continue;
          const double fc = ei(cand);
          if (fc > fx) {
            x = std::move(cand);
            fx = fc;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (fx > out.ei) {
      out.ei = fx;
      out.x = x;
    }
  }
  return out;
}

template <typename Engine>
std::vector<double> propose_next(const GPModel& model, const ParamSpace& space, Engine& rng,
                                 const ProposeOptions& opt = {}) {
  if (space.d() != model.d()) {
    throw InvalidInput("parameter space and model disagree on dimension");
  }
  return propose_next_detailed(model, rng, opt).x;
}

}  // namespace regolith::bo
