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

// Command-line front end. Exit codes: 0 success, 2 invalid input or I/O
// failure (with an error document on stderr), 1 internal error.

#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "regolith/bo/campaign.hpp"
#include "regolith/harness/run_config.hpp"
#include "regolith/harness/runner.hpp"
#include "regolith/harness/service.hpp"

namespace regolith::harness {

namespace detail {

struct CommonFlags {
  std::string config_file;
  std::string gait;
  std::string gait_file;
  std::string preset_file;
  std::string out_dir;
  std::optional<double> slope_deg;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration;
  std::optional<double> dt;
  bool stop_at_target = false;
};

inline void add_common(CLI::App* cmd, CommonFlags& f, bool gait_flag) {
  cmd->add_option("--config", f.config_file, "RunConfig JSON file");
  if (gait_flag) {
    cmd->add_option("--gait", f.gait, "Preset name");
    cmd->add_option("--gait-file", f.gait_file, "Gait JSON file");
  }
  cmd->add_option("--preset-file", f.preset_file, "Preset catalog JSON (default: built in)");
  cmd->add_option("--out", f.out_dir, "Output directory");
  cmd->add_option("--slope-deg", f.slope_deg, "Slope angle in degrees");
  cmd->add_option("--seed", f.seed, "Run seed");
  cmd->add_option("--duration", f.duration, "Episode duration in seconds");
  cmd->add_option("--dt", f.dt, "Integration step in seconds");
  cmd->add_flag("--stop-at-target", f.stop_at_target, "End episodes at the target yaw");
}

inline RunConfig build_config(const CommonFlags& f) {
  RunConfig cfg = f.config_file.empty() ? RunConfig{} : load_run_config(f.config_file);
  if (!f.preset_file.empty()) cfg.preset_file = f.preset_file;
  if (!f.gait_file.empty()) {
    cfg.gait = GaitSpec{};
    cfg.gait.file = f.gait_file;
    gait::load_gait_file(f.gait_file);  // surface I/O errors before running
  } else if (!f.gait.empty()) {
    cfg.gait = GaitSpec{};
    cfg.gait.preset = f.gait;
    catalog_for(cfg).get(f.gait);
  }
  if (!f.out_dir.empty()) cfg.output_dir = f.out_dir;
  if (f.slope_deg) cfg.slope.slope_angle = deg_to_rad(*f.slope_deg);
  if (f.seed) cfg.seed = *f.seed;
  if (f.duration) cfg.episode.duration = *f.duration;
  if (f.dt) cfg.episode.dt = *f.dt;
  if (f.stop_at_target) cfg.episode.stop_at_target = true;
  cfg.validate();
  return cfg;
}

inline std::string label_of(const RunConfig& cfg) {
  if (cfg.gait.inline_gait) return cfg.gait.inline_gait->label;
  if (!cfg.gait.file.empty()) return std::filesystem::path(cfg.gait.file).stem().string();
  return cfg.gait.preset;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Regolith: turning-gait simulation, optimization and bench tools"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kLibraryVersion));

  detail::CommonFlags sim_flags;
  auto* simulate = app.add_subcommand("simulate", "Run one episode");
  detail::add_common(simulate, sim_flags, true);

  detail::CommonFlags opt_flags;
  std::optional<int> budget, n_random;
  std::vector<std::string> seed_gaits;
  std::string resume;
  std::optional<double> penalty, episode_duration;
  auto* optimize = app.add_subcommand("optimize", "Run a Bayesian-optimization campaign");
  detail::add_common(optimize, opt_flags, false);
  optimize->add_option("--budget", budget, "Total evaluations");
  optimize->add_option("--n-random", n_random, "Random explorations after the seeds");
  optimize->add_option("--seed-gait", seed_gaits, "Preset(s) evaluated first");
  optimize->add_option("--resume", resume, "Campaign log to continue (appended in place)");
  optimize->add_option("--penalty", penalty, "Fit failures at this value instead of omitting");
  optimize->add_option("--episode-duration", episode_duration,
                       "Per-evaluation episode length in seconds");

  BenchSettings bench_settings;
  double sweep_extent_deg = 90.0;
  double bench_dt = terradynamics::kDefaultBenchDt;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Single-wheel torque bench, protocols A and B");
  bench->add_option("--sweep-extent", sweep_extent_deg, "Sweep extent in degrees")
      ->capture_default_str();
  bench->add_option("--a-spin", bench_settings.solid.spin_rate, "Protocol A spin (rad/s)")
      ->capture_default_str();
  bench->add_option("--a-sweep", bench_settings.solid.sweep_rate, "Protocol A sweep (rad/s)")
      ->capture_default_str();
  bench->add_option("--b-spin", bench_settings.fluid.spin_rate, "Protocol B spin (rad/s)")
      ->capture_default_str();
  bench->add_option("--b-sweep", bench_settings.fluid.sweep_rate, "Protocol B sweep (rad/s)")
      ->capture_default_str();
  bench->add_option("--bench-dt", bench_dt, "Bench time step (s)")->capture_default_str();
  bench->add_option("--out", bench_out, "Output directory");

  detail::CommonFlags cmp_flags;
  std::vector<std::string> cmp_gaits;
  auto* compare = app.add_subcommand("compare", "Yaw-versus-time for several presets");
  detail::add_common(compare, cmp_flags, false);
  compare->add_option("--gait", cmp_gaits, "Preset names (repeat or comma-separate)")
      ->delimiter(',')
      ->required();

  std::string host = "127.0.0.1";
  int port = 8787;
  ServiceOptions serve_opts;
  auto* serve = app.add_subcommand("serve", "Local JSON-over-HTTP service");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--static-dir", serve_opts.static_dir, "Directory served at /");
  serve->add_option("--data-dir", serve_opts.data_dir, "Campaign log directory");

  auto* presets = app.add_subcommand("presets", "Print the preset catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kLibraryVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_json(InvalidInput(e.what())).dump() << "\n";
    return 2;
  }

  try {
    const std::string started = utc_timestamp();
    if (*simulate) {
      const RunConfig cfg = detail::build_config(sim_flags);
      const SimulateOutput res = run_simulate(cfg);
      const auto dir = output_dir_for(cfg, "simulate", detail::label_of(cfg));
      write_simulate_artifacts(dir, cfg, res, started);
      json printed = res.summary;
      printed["output_dir"] = dir.string();
      out << printed.dump(2) << "\n";
      return 0;
    }

    if (*optimize) {
      RunConfig cfg = detail::build_config(opt_flags);
      if (budget) cfg.campaign.budget = *budget;
      if (n_random) cfg.campaign.n_random = *n_random;
      if (!seed_gaits.empty()) cfg.campaign.seed_gaits = seed_gaits;
      if (penalty) cfg.campaign.failure_policy = bo::FailurePolicy::penalty(*penalty);
      if (episode_duration) cfg.campaign.episode_duration = *episode_duration;
      cfg.validate();
      for (const auto& g : cfg.campaign.seed_gaits) catalog_for(cfg).get(g);

      const auto dir = ensure_dir(output_dir_for(cfg, "optimize", "campaign"));
      bo::CampaignLog prior;
      std::filesystem::path log_path = dir / "campaign.jsonl";
      if (!resume.empty()) {
        prior = bo::load_log_file(resume);
        log_path = resume;
      }
      std::ofstream log_out(log_path, std::ios::binary | (resume.empty() ? std::ios::trunc
                                                                          : std::ios::app));
      std::ofstream timing_out(dir / "campaign_timing.jsonl",
                               std::ios::binary | (resume.empty() ? std::ios::trunc : std::ios::app));
      if (!log_out) throw IoError("cannot write campaign log", log_path.string());
      bo::CampaignHooks hooks;
      hooks.on_record = [&](const bo::IterationRecord& r) {
        log_out << bo::to_jsonl_line(r) << std::flush;
        timing_out << json{{"iteration", r.iteration}, {"wall_time_s", r.wall_time_s}}.dump()
                   << "\n";
      };
      const OptimizeOutput res = run_optimize(cfg, std::move(prior), hooks);
      write_text(dir / "summary.json", res.summary.dump(2) + "\n");
      if (res.best_gait) write_text(dir / "best_gait.json", gait::to_json(*res.best_gait).dump(2) + "\n");
      json result = res.summary;
      result["log_file"] = log_path.string();
      ExperimentRecord rec{"optimize", to_json(cfg, false), result, started, utc_timestamp()};
      write_text(dir / "record.json", rec.to_json().dump(2) + "\n");
      json printed{{"schema_version", kSchemaVersion},
                   {"iterations", res.log.records.size()},
                   {"failures", res.log.failures()},
                   {"best", res.summary["best"]},
                   {"best_episode", res.best_summary},
                   {"log_file", log_path.string()},
                   {"output_dir", dir.string()}};
      out << printed.dump(2) << "\n";
      return 0;
    }

    if (*bench) {
      bench_settings.dt = bench_dt;
      if (!std::isfinite(sweep_extent_deg) || sweep_extent_deg < 0.0) {
        throw InvalidInput("sweep extent must be non-negative", {"sweep_extent"});
      }
      bench_settings.solid.sweep_extent = bench_settings.fluid.sweep_extent =
          deg_to_rad(sweep_extent_deg);
      const auto c = run_bench(bench_settings);
      const json summary = bench_summary(bench_settings, c);
      const auto dir = ensure_dir(bench_out.empty() ? data_root() / "bench" : std::filesystem::path(bench_out));
      std::ostringstream a, b;
      terradynamics::write_bench_csv(a, c.solid);
      terradynamics::write_bench_csv(b, c.fluid);
      write_text(dir / "protocol_a.csv", a.str());
      write_text(dir / "protocol_b.csv", b.str());
      write_text(dir / "bench_summary.json", summary.dump(2) + "\n");
      json printed = summary;
      printed["output_dir"] = dir.string();
      out << printed.dump(2) << "\n";
      return 0;
    }

    if (*compare) {
      const RunConfig cfg = detail::build_config(cmp_flags);
      const CompareOutput res = run_compare(cfg, cmp_gaits);
      for (const auto& d : res.duplicates) {
        err << "warning: duplicate gait '" << d << "' ignored\n";
      }
      const auto dir = ensure_dir(output_dir_for(cfg, "compare", "compare"));
      std::ostringstream csv;
      write_compare_csv(csv, res);
      write_text(dir / "compare.csv", csv.str());
      write_text(dir / "ordering.json", res.ordering.dump(2) + "\n");
      json printed = res.ordering;
      printed["output_dir"] = dir.string();
      out << printed.dump(2) << "\n";
      return 0;
    }

    if (*serve) {
      Service service(serve_opts);
      err << "listening on http://" << host << ":" << port << "\n";
      if (!service.listen(host, port)) {
        throw IoError("cannot listen on port " + std::to_string(port), host);
      }
      return 0;
    }

    if (*presets) {
      Service service;
      out << service.presets().body.dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << error_json(e).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << error_json(e).dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace regolith::harness
