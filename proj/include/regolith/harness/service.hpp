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

// Local JSON-over-HTTP service for the gait studio.
//
//   GET  /api/presets
//   POST /api/simulate
//   POST /api/campaign/start
//   GET  /api/campaign/{id}/status[?since=N]
//   POST /api/campaign/{id}/stop
//   GET  /api/bench[?sweep_extent_deg=&a_spin=&a_sweep=&b_spin=&b_sweep=]
//
// Every body carries schema_version. One campaign runs at a time.

#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "regolith/bo/campaign.hpp"
#include "regolith/gait_space.hpp"
#include "regolith/harness/run_config.hpp"
#include "regolith/harness/runner.hpp"
#include "regolith/json_util.hpp"

namespace regolith::harness {

inline constexpr std::size_t kMaxTrajectoryPoints = 2000;

struct ServiceOptions {
  std::string static_dir;  // served at / when set
  std::string data_dir;    // campaign logs land in <data_dir>/campaigns when set
};

struct Reply {
  int status = 200;
  json body;
};

inline Reply error_reply(int status, const std::exception& e) { return {status, error_json(e)}; }

inline json trajectory_json(const std::vector<sim::Sample>& samples) {
  json arr = json::array();
  for (const auto& s : sim::downsample(samples, kMaxTrajectoryPoints)) {
    arr.push_back(json{{"t_s", s.t},
                       {"x_m", s.state.x},
                       {"y_m", s.state.y},
                       {"yaw_rad", s.state.yaw},
                       {"roll_rad", s.state.roll}});
  }
  return arr;
}

inline json param_space_json(const bo::ParamSpace& space) {
  json dims = json::array();
  for (const auto& d : space.dims()) {
    dims.push_back(json{{"name", d.name},
                        {"lower", d.lower},
                        {"upper", d.upper},
                        {"kind", std::string(bo::to_string(d.kind))}});
  }
  return dims;
}

class Service {
 public:
  explicit Service(ServiceOptions opts = {}) : opts_(std::move(opts)) { install_routes(); }

  ~Service() { stop(); }

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  httplib::Server& server() { return server_; }

  /// Binds and blocks until stop().
  bool listen(const std::string& host, int port) { return server_.listen(host, port); }

  /// Stops the HTTP server and any running campaign.
  void stop() {
    server_.stop();
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (active_) active_->stop_flag.store(true);
    }
    join_all();
  }

  // Handlers, callable without a socket.

  Reply presets() const {
    const auto& cat = gait::builtin_catalog();
    json arr = json::array();
    for (const auto& [name, g] : cat.gaits) arr.push_back(gait::to_json(g));
    return {200, json{{"schema_version", kSchemaVersion},
                      {"preset_set_version", cat.version},
                      {"presets", arr},
                      {"param_space", param_space_json(gait::default_gait_space())}}};
  }

  Reply simulate(const std::string& body) const {
    try {
      const RunConfig cfg = run_config_from_json(json::parse(body));
      const SimulateOutput out = run_simulate(cfg);
      return {200, json{{"schema_version", kSchemaVersion},
                        {"summary", out.summary},
                        {"gait", gait::to_json(out.gait)},
                        {"trajectory", trajectory_json(out.result.samples)}}};
    } catch (const json::exception& e) {
      return error_reply(400, InvalidInput(std::string("request body is not valid JSON: ") + e.what()));
    } catch (const Error& e) {
      return error_reply(400, e);
    }
  }

  Reply start_campaign(const std::string& body) {
    RunConfig cfg;
    try {
      cfg = run_config_from_json(body.empty() ? json::object() : json::parse(body));
    } catch (const json::exception& e) {
      return error_reply(400, InvalidInput(std::string("request body is not valid JSON: ") + e.what()));
    } catch (const Error& e) {
      return error_reply(400, e);
    }
    std::lock_guard<std::mutex> lock(mu_);
    if (active_ && !active_->finished.load()) {
      return {409, error_json(InvalidInput("a campaign is already running", {active_->id}))};
    }
    if (active_) finished_.push_back(std::move(active_));
    auto c = std::make_unique<Campaign>();
    c->id = "campaign-" + std::to_string(++counter_);
    c->cfg = cfg;
    c->config_json = to_json(cfg);
    Campaign* raw = c.get();
    active_ = std::move(c);
    raw->worker = std::thread([this, raw] { run(raw); });
    return {202, json{{"schema_version", kSchemaVersion}, {"id", raw->id}, {"state", "running"}}};
  }

  Reply campaign_status(const std::string& id, std::size_t since = 0) {
    std::lock_guard<std::mutex> lock(mu_);
    Campaign* c = find(id);
    if (!c) return {404, error_json(NotFound("unknown campaign '" + id + "'"))};
    std::lock_guard<std::mutex> clock(c->mu);
    json records = json::array();
    const bo::ParamSpace space = gait::default_gait_space();
    for (std::size_t i = since; i < c->log.records.size(); ++i) {
      json r = bo::to_json(c->log.records[i]);
      try {
        r["gait"] = gait::to_json(gait::decode(c->log.records[i].obs.x, space, c->base));
      } catch (const Error&) {
        r["gait"] = nullptr;
      }
      records.push_back(std::move(r));
    }
    json j{{"schema_version", kSchemaVersion},
           {"id", c->id},
           {"state", c->state},
           {"budget", c->cfg.campaign.budget},
           {"completed", c->log.records.size()},
           {"since", since},
           {"records", records},
           {"summary", bo::summary_json(c->log)},
           {"config", c->config_json}};
    if (!c->error.empty()) j["error"] = c->error;
    return {200, j};
  }

  Reply stop_campaign(const std::string& id) {
    std::lock_guard<std::mutex> lock(mu_);
    Campaign* c = find(id);
    if (!c) return {404, error_json(NotFound("unknown campaign '" + id + "'"))};
    c->stop_flag.store(true);
    std::lock_guard<std::mutex> clock(c->mu);
    return {200, json{{"schema_version", kSchemaVersion}, {"id", c->id}, {"state", c->state},
                      {"stop_requested", true}}};
  }

  Reply bench(const httplib::Params& q) const {
    try {
      BenchSettings b;
      auto num = [&](const char* key, double& out) {
        auto it = q.find(key);
        if (it == q.end()) return;
        std::size_t used = 0;
        double v = 0.0;
        try {
          v = std::stod(it->second, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != it->second.size()) throw InvalidInput("query parameter is not a number", {key});
        out = v;
      };
      double extent_deg = rad_to_deg(b.solid.sweep_extent);
      num("sweep_extent_deg", extent_deg);
      num("a_spin", b.solid.spin_rate);
      num("a_sweep", b.solid.sweep_rate);
      num("b_spin", b.fluid.spin_rate);
      num("b_sweep", b.fluid.sweep_rate);
      b.solid.sweep_extent = b.fluid.sweep_extent = deg_to_rad(extent_deg);
      const auto c = run_bench(b);
      json j = bench_summary(b, c);
      j["profile_a"] = profile_json(c.solid);
      j["profile_b"] = profile_json(c.fluid);
      return {200, j};
    } catch (const Error& e) {
      return error_reply(400, e);
    }
  }

  /// Blocks until the active campaign, if any, has finished.
  void wait_for_campaign() {
    Campaign* c = nullptr;
    {
      std::lock_guard<std::mutex> lock(mu_);
      c = active_.get();
    }
    if (c && c->worker.joinable()) c->worker.join();
  }

 private:
  struct Campaign {
    std::string id;
    RunConfig cfg;
    json config_json;
    gait::GaitParams base;
    std::mutex mu;
    bo::CampaignLog log;
    std::string state = "running";
    std::string error;
    std::atomic<bool> stop_flag{false};
    std::atomic<bool> finished{false};
    std::thread worker;
  };

  Campaign* find(const std::string& id) {
    if (active_ && active_->id == id) return active_.get();
    for (auto& c : finished_) {
      if (c->id == id) return c.get();
    }
    return nullptr;
  }

  void run(Campaign* c) {
    std::unique_ptr<std::ofstream> sink;
    try {
      c->base = campaign_base(c->cfg);
      if (!opts_.data_dir.empty()) {
        const auto dir = ensure_dir(std::filesystem::path(opts_.data_dir) / "campaigns");
        sink = std::make_unique<std::ofstream>(dir / (c->id + ".jsonl"), std::ios::binary);
      }
      bo::CampaignHooks hooks;
      hooks.stop = &c->stop_flag;
      hooks.on_record = [c, &sink](const bo::IterationRecord& r) {
        if (sink) *sink << bo::to_jsonl_line(r) << std::flush;
        std::lock_guard<std::mutex> lock(c->mu);
        c->log.records.push_back(r);
      };
      const bo::ParamSpace space = gait::default_gait_space();
      bo::run_campaign(make_gait_evaluator(c->cfg, space, c->base),
                       campaign_config(c->cfg, space), space.d(), {}, hooks);
      std::lock_guard<std::mutex> lock(c->mu);
      c->state = c->stop_flag.load() &&
                         c->log.records.size() < static_cast<std::size_t>(c->cfg.campaign.budget)
                     ? "stopped"
                     : "finished";
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(c->mu);
      c->state = "failed";
      c->error = e.what();
    }
    c->finished.store(true);
  }

  void join_all() {
    std::vector<Campaign*> all;
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (active_) all.push_back(active_.get());
      for (auto& c : finished_) all.push_back(c.get());
    }
    for (Campaign* c : all) {
      if (c->worker.joinable()) c->worker.join();
    }
  }

  static void send(httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  }

  void install_routes() {
    if (!opts_.static_dir.empty()) server_.set_mount_point("/", opts_.static_dir);
    server_.Get("/api/presets", [this](const httplib::Request&, httplib::Response& res) {
      send(res, presets());
    });
    server_.Post("/api/simulate", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, simulate(req.body));
    });
    server_.Post("/api/campaign/start",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   send(res, start_campaign(req.body));
                 });
    server_.Get(R"(/api/campaign/([^/]+)/status)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  std::size_t since = 0;
                  if (req.has_param("since")) {
                    try {
                      since = static_cast<std::size_t>(std::stoul(req.get_param_value("since")));
                    } catch (const std::exception&) {
                      send(res, error_reply(400, InvalidInput("since must be a count", {"since"})));
                      return;
                    }
                  }
                  send(res, campaign_status(req.matches[1], since));
                });
    server_.Post(R"(/api/campaign/([^/]+)/stop)",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   send(res, stop_campaign(req.matches[1]));
                 });
    server_.Get("/api/bench", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, bench(req.params));
    });
    server_.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
          try {
            std::rethrow_exception(ep);
          } catch (const std::exception& e) {
            send(res, error_reply(500, e));
          } catch (...) {
            send(res, error_reply(500, std::runtime_error("unknown error")));
          }
        });
    server_.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return;
      if (res.status == 404) {
        send(res, {404, error_json(NotFound("no route for " + req.path))});
      }
    });
  }

  ServiceOptions opts_;
  httplib::Server server_;
  std::mutex mu_;
  std::unique_ptr<Campaign> active_;
  std::vector<std::unique_ptr<Campaign>> finished_;
  int counter_ = 0;
};

}  // namespace regolith::harness
