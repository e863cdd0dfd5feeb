// hearth: scenario runner, config checker and gateway server.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "hearth/config/config.hpp"
#include "hearth/core/error.hpp"
#include "hearth/gateway/server.hpp"
#include "hearth/harness/sample_config.hpp"
#include "hearth/harness/scenarios.hpp"

using namespace hearth;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::atomic<bool> g_stop{false};

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (auto s : kAllScenarios) out.emplace_back(to_string(s));
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Writes `json` or `csv` depending on the file extension; stdout gets JSON.
int write_output(const std::string& path, const std::string& json, const std::string& csv) {
  if (path.empty() || path == "-") {
    std::cout << json << "\n";
    return kOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "hearth: cannot write " << path << "\n";
    return kFailed;
  }
  out << (ends_with(path, ".csv") ? csv : json + "\n");
  return out ? kOk : kFailed;
}

int report_budget(const std::vector<harness::MetricsReport>& reports) {
  int rc = kOk;
  for (const auto& r : reports) {
    for (const auto& s : r.stores) {
      if (s.peak_units > s.budget_units) {
        std::cerr << "hearth: " << r.name << " store " << s.store_id << " peaked at " << s.peak_units
                  << " units over its budget of " << s.budget_units << "\n";
        rc = kFailed;
      }
    }
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hearth: simulated smart home with budgeted telemetry memory"};
  app.require_subcommand(1);

  std::string scenario;
  int interval = 0;
  std::int64_t duration = harness::kDefaultDurationS;
  std::uint64_t seed = 7;
  std::string out_path;

  auto* run = app.add_subcommand("run", "Run one scenario at one interval tier");
  run->add_option("--scenario", scenario, "Scenario")->required()->check(CLI::IsMember(scenario_names()));
  run->add_option("--interval", interval, "Measurement interval, seconds")
      ->required()
      ->check(CLI::IsMember({15, 30, 60, 120, 300}));
  run->add_option("--duration", duration, "Simulated seconds")->capture_default_str()->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Random seed")->capture_default_str();
  run->add_option("--out", out_path, "Output file, .json or .csv (stdout when omitted)");

  auto* matrix = app.add_subcommand("matrix", "Run every scenario at every tier");
  matrix->add_option("--duration", duration, "Simulated seconds")->capture_default_str()->check(CLI::PositiveNumber);
  matrix->add_option("--seed", seed, "Random seed")->capture_default_str();
  matrix->add_option("--out", out_path, "Output file, .json or .csv (stdout when omitted)");

  auto* elderly = app.add_subcommand("elderly", "Run the 24-hour elderly day");
  elderly->add_option("--seed", seed, "Random seed")->capture_default_str();
  elderly->add_option("--out", out_path, "Output JSON file (stdout when omitted)");

  std::string config_path;
  auto* validate = app.add_subcommand("validate-config", "Parse and validate a configuration file");
  validate->add_option("file", config_path, "YAML configuration")->required();

  std::string host = "127.0.0.1";
  int port = 8123;
  double speed = 1.0;
  auto* serve = app.add_subcommand("serve", "Serve the REST and WebSocket gateway");
  serve->add_option("--config", config_path, "YAML configuration (built-in sample when omitted)");
  serve->add_option("--host", host, "Listen address")->capture_default_str();
  serve->add_option("--port", port, "Listen port; HEARTH_PORT overrides")->capture_default_str()->check(CLI::Range(0, 65535));
  serve->add_option("--speed", speed, "Simulated seconds per wall second, 0 = paused")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  serve->add_option("--seed", seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "hearth: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*run) {
      const auto kind = *parse_scenario_kind(scenario);
      const auto report = harness::run_scenario(kind, interval, duration, seed);
      const int rc = write_output(out_path, harness::to_json(report).dump(2), harness::to_csv({report}));
      return rc != kOk ? rc : report_budget({report});
    }
    if (*matrix) {
      const auto reports = harness::run_matrix(duration, seed);
      const int rc = write_output(out_path, harness::to_json(reports).dump(2), harness::to_csv(reports));
      return rc != kOk ? rc : report_budget(reports);
    }
    if (*elderly) {
      const auto bundle = harness::run_24h_elderly(seed);
      const int rc = write_output(out_path, harness::to_json(bundle).dump(2), harness::to_csv(bundle.phases));
      auto all = bundle.phases;
      all.push_back(bundle.all_day);
      return rc != kOk ? rc : report_budget(all);
    }
    if (*validate) {
      const auto cfg = config::validate(config::parse_file(config_path));
      std::cout << "OK " << cfg.doc().entities.size() << " entities, " << cfg.doc().stores.size() << " stores, "
                << cfg.doc().scenes.size() << " scenes, " << cfg.doc().automations.size() << " automations\n";
      return kOk;
    }
    if (*serve) {
      if (const char* env = std::getenv("HEARTH_PORT")) {
        try {
          port = std::stoi(env);
        } catch (const std::exception&) {
          std::cerr << "hearth: HEARTH_PORT is not a port number: " << env << "\n";
          return kUsage;
        }
      }
      const auto cfg = config_path.empty() ? harness::sample_config()
                                           : config::validate(config::parse_file(config_path));
      harness::WorldOptions opts;
      opts.seed = seed;
      if (cfg.doc().script) opts.script = *cfg.doc().script;
      gateway::WorldExecutor executor(cfg, opts, speed);
      gateway::Server server(executor, host, static_cast<unsigned short>(port));
      server.start();
      std::cerr << "hearth: serving on http://" << host << ":" << server.port() << " at speed " << speed
                << " (no authentication; keep it on a trusted network)\n";
      std::signal(SIGINT, [](int) { g_stop = true; });
      std::signal(SIGTERM, [](int) { g_stop = true; });
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
      executor.stop();
      server.stop();
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "hearth: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "hearth: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
