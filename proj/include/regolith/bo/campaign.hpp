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

// Optimization campaigns: seed points, then uniform random exploration, then
// EI proposals from a GP refitted every iteration, until the budget is spent.
// Failed evaluations count against the budget.
//
// Iteration i draws from its own engine seeded by (rng_seed, i), so a campaign
// resumed from its log proposes exactly what an uninterrupted run would.

#pragma once

#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "regolith/bo/acquisition.hpp"
#include "regolith/bo/gp.hpp"
#include "regolith/bo/param_space.hpp"
#include "regolith/core.hpp"

namespace regolith::bo {

using nlohmann::json;

enum class Acquisition { kExpectedImprovement };

struct FailurePolicy {
  enum class Kind { kOmit, kPenalty };
  Kind kind = Kind::kOmit;
  double penalty_value = 0.0;

  static FailurePolicy omit() { return {}; }
  static FailurePolicy penalty(double v) { return {Kind::kPenalty, v}; }

  bool operator==(const FailurePolicy&) const = default;
};

struct CampaignConfig {
  int budget = 30;
  int n_random = 4;
  std::vector<std::vector<double>> seed_points;
  Acquisition acquisition = Acquisition::kExpectedImprovement;
  std::uint64_t rng_seed = 0;
  FailurePolicy failure_policy;
  ProposeOptions propose;
  MaximizeLikelihood hyper_fit;

  void validate(std::size_t d) const {
    std::vector<std::string> bad;
    if (n_random < 0) bad.push_back("n_random");
    if (budget < n_random + static_cast<int>(seed_points.size())) bad.push_back("budget");
    for (const auto& p : seed_points) {
      if (p.size() != d || !in_unit_cube(p)) {
        bad.push_back("seed_points");
        break;
      }
    }
    if (failure_policy.kind == FailurePolicy::Kind::kPenalty &&
        !std::isfinite(failure_policy.penalty_value)) {
      bad.push_back("failure_policy");
    }
    if (propose.starts < 1) bad.push_back("propose.starts");
    if (!bad.empty()) throw InvalidInput("invalid campaign configuration", bad);
  }
};

struct EvalResult {
  double value = 0.0;
  bool failed = false;
};

using Evaluator = std::function<EvalResult(const std::vector<double>&)>;

enum class Source { kSeed, kRandom, kModel, kRandomFallback };

inline std::string_view to_string(Source s) {
  switch (s) {
    case Source::kSeed: return "seed";
    case Source::kRandom: return "random";
    case Source::kModel: return "model";
    case Source::kRandomFallback: return "random_fallback";
  }
  return "?";
}

inline Source source_from_string(std::string_view s) {
  for (Source v : {Source::kSeed, Source::kRandom, Source::kModel, Source::kRandomFallback}) {
    if (to_string(v) == s) return v;
  }
  throw InvalidInput("unknown observation source '" + std::string(s) + "'", {"source"});
}

struct IterationRecord {
  int iteration = 0;
  Source source = Source::kSeed;
  Observation obs;
  std::string error;                  // evaluator exception text, if any
  std::optional<double> best_so_far;  // over successful observations so far
  std::optional<GPHyperparams> hyper;
  std::optional<double> acquisition_value;
  double wall_time_s = 0.0;  // kept out of the log lines

  bool operator==(const IterationRecord& o) const {
    return iteration == o.iteration && source == o.source && obs == o.obs &&
           error == o.error && best_so_far == o.best_so_far && hyper == o.hyper &&
           acquisition_value == o.acquisition_value;
  }
};

struct BestPoint {
  int iteration = 0;
  double value = 0.0;
  std::vector<double> x;
};

struct CampaignLog {
  std::vector<IterationRecord> records;

  std::vector<Observation> observations() const {
    std::vector<Observation> out;
    for (const auto& r : records) out.push_back(r.obs);
    return out;
  }

  /// Best-so-far after each successful observation.
  std::vector<double> best_trace() const {
    std::vector<double> trace;
    for (const auto& r : records) {
      if (!r.obs.failed && r.best_so_far) trace.push_back(*r.best_so_far);
    }
    return trace;
  }

  std::optional<BestPoint> best() const {
    std::optional<BestPoint> b;
    for (const auto& r : records) {
      if (r.obs.failed) continue;
      if (!b || r.obs.value > b->value) b = BestPoint{r.iteration, r.obs.value, r.obs.x};
    }
    return b;
  }

  int failures() const {
    int n = 0;
    for (const auto& r : records) n += r.obs.failed ? 1 : 0;
    return n;
  }

  bool operator==(const CampaignLog&) const = default;
};

struct CampaignHooks {
  std::function<void(const IterationRecord&)> on_record;
  const std::atomic<bool>* stop = nullptr;  // checked before each evaluation
};

namespace detail {

inline std::vector<Observation> fitting_set(const std::vector<IterationRecord>& records,
                                            const FailurePolicy& policy) {
  std::vector<Observation> obs;
  for (const auto& r : records) {
    if (!r.obs.failed) {
      obs.push_back(r.obs);
    } else if (policy.kind == FailurePolicy::Kind::kPenalty) {
      obs.push_back({r.obs.x, policy.penalty_value, false});
    }
  }
  return obs;
}

inline std::vector<double> uniform_point(std::mt19937_64& rng, std::size_t d) {
  std::vector<double> x(d);
  for (auto& v : x) v = uniform01(rng);
  return x;
}

}  // namespace detail

/// Runs (or resumes) a campaign over [0, 1]^d. Evaluator exceptions are
/// recorded as failures and the campaign carries on.
inline CampaignLog run_campaign(const Evaluator& evaluator, const CampaignConfig& cfg,
                                std::size_t d, CampaignLog log = {},
                                const CampaignHooks& hooks = {}) {
  if (d == 0) throw InvalidInput("campaign needs at least one dimension", {"d"});
  cfg.validate(d);
  if (log.records.size() > static_cast<std::size_t>(cfg.budget)) {
    throw InvalidInput("resumed log already exceeds the budget", {"budget"});
  }
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    if (log.records[i].iteration != static_cast<int>(i) || log.records[i].obs.x.size() != d) {
      throw InvalidInput("resumed log is not a contiguous campaign of matching dimension");
    }
  }
  std::optional<double> best;
  for (const auto& r : log.records) {
    if (!r.obs.failed && (!best || r.obs.value > *best)) best = r.obs.value;
  }

  const int n_seed = static_cast<int>(cfg.seed_points.size());
  for (int i = static_cast<int>(log.records.size()); i < cfg.budget; ++i) {
    if (hooks.stop && hooks.stop->load()) break;
    const auto started = std::chrono::steady_clock::now();
    std::mt19937_64 rng(mix_seed(cfg.rng_seed, static_cast<std::uint64_t>(i)));
    IterationRecord rec;
    rec.iteration = i;
    if (i < n_seed) {
      rec.source = Source::kSeed;
      rec.obs.x = cfg.seed_points[static_cast<std::size_t>(i)];
    } else if (i < n_seed + cfg.n_random) {
      rec.source = Source::kRandom;
      rec.obs.x = detail::uniform_point(rng, d);
    } else {
      const auto train = detail::fitting_set(log.records, cfg.failure_policy);
      try {
        const GPModel model = gp_fit(train, cfg.hyper_fit);
        const Proposal p = propose_next_detailed(model, rng, cfg.propose);
        rec.source = Source::kModel;
        rec.obs.x = p.x;
        rec.hyper = model.hyper;
        rec.acquisition_value = p.ei;
      } catch (const EmptyModelError&) {
        rec.source = Source::kRandomFallback;
        rec.obs.x = detail::uniform_point(rng, d);
      } catch (const ConditioningError&) {
        rec.source = Source::kRandomFallback;
        rec.obs.x = detail::uniform_point(rng, d);
      }
    }

    try {
      const EvalResult r = evaluator(rec.obs.x);
      rec.obs.failed = r.failed || !std::isfinite(r.value);
      rec.obs.value = rec.obs.failed ? 0.0 : r.value;
    } catch (const std::exception& e) {
      rec.obs.failed = true;
      rec.obs.value = 0.0;
      rec.error = e.what();
    } catch (...) {
      rec.obs.failed = true;
      rec.obs.value = 0.0;
      rec.error = "unknown evaluator exception";
    }
    if (!rec.obs.failed && (!best || rec.obs.value > *best)) best = rec.obs.value;
    rec.best_so_far = best;
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    log.records.push_back(rec);
    if (hooks.on_record) hooks.on_record(log.records.back());
  }
  return log;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline json to_json(const GPHyperparams& h) {
  return json{{"lengthscales", h.lengthscales},
              {"signal_variance", h.signal_variance},
              {"noise_variance", h.noise_variance},
              {"mean", h.mean}};
}

inline GPHyperparams hyper_from_json(const json& j) {
  GPHyperparams h;
  h.lengthscales = j.at("lengthscales").get<std::vector<double>>();
  h.signal_variance = j.at("signal_variance").get<double>();
  h.noise_variance = j.at("noise_variance").get<double>();
  h.mean = j.at("mean").get<double>();
  return h;
}

/// One log line. Wall time is left out so replayed campaigns are byte-identical.
inline json to_json(const IterationRecord& r) {
  json j{{"schema_version", kSchemaVersion},
         {"iteration", r.iteration},
         {"source", std::string(to_string(r.source))},
         {"x", r.obs.x},
         {"failed", r.obs.failed}};
  j["value"] = r.obs.failed ? json(nullptr) : json(r.obs.value);
  j["best_so_far"] = r.best_so_far ? json(*r.best_so_far) : json(nullptr);
  j["hyper"] = r.hyper ? to_json(*r.hyper) : json(nullptr);
  j["acquisition_value"] = r.acquisition_value ? json(*r.acquisition_value) : json(nullptr);
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline IterationRecord record_from_json(const json& j) {
  if (j.value("schema_version", -1) != kSchemaVersion) {
    throw InvalidInput("campaign log line has a missing or unsupported schema_version",
                       {"schema_version"});
  }
  IterationRecord r;
  r.iteration = j.at("iteration").get<int>();
  r.source = source_from_string(j.at("source").get<std::string>());
  r.obs.x = j.at("x").get<std::vector<double>>();
  r.obs.failed = j.at("failed").get<bool>();
  r.obs.value = r.obs.failed ? 0.0 : j.at("value").get<double>();
  if (!j.at("best_so_far").is_null()) r.best_so_far = j.at("best_so_far").get<double>();
  if (!j.at("hyper").is_null()) r.hyper = hyper_from_json(j.at("hyper"));
  if (!j.at("acquisition_value").is_null()) {
    r.acquisition_value = j.at("acquisition_value").get<double>();
  }
  r.error = j.value("error", std::string());
  return r;
}

inline std::string to_jsonl_line(const IterationRecord& r) { return to_json(r).dump() + "\n"; }

inline std::string to_jsonl(const CampaignLog& log) {
  std::string out;
  for (const auto& r : log.records) out += to_jsonl_line(r);
  return out;
}

inline CampaignLog log_from_jsonl(std::istream& in, const std::string& where = "<stream>") {
  CampaignLog log;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      log.records.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw IoError("bad campaign log line " + std::to_string(lineno) + ": " + e.what(), where);
    }
  }
  return log;
}

inline CampaignLog load_log_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open campaign log", path);
  return log_from_jsonl(in, path);
}

inline json summary_json(const CampaignLog& log) {
  json j{{"schema_version", kSchemaVersion},
         {"iterations", log.records.size()},
         {"failures", log.failures()},
         {"best_trace", log.best_trace()}};
  if (const auto b = log.best()) {
    j["best"] = json{{"iteration", b->iteration}, {"value", b->value}, {"x", b->x}};
  } else {
    j["best"] = nullptr;
  }
  return j;
}

}  // namespace regolith::bo
