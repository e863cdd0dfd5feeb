#include "hearth/harness/scenarios.hpp"

#include <algorithm>
#include <map>

#include "hearth/core/error.hpp"
#include "hearth/devices/scripts.hpp"
#include "hearth/harness/sample_config.hpp"

namespace hearth::harness {

namespace {

constexpr SimMillis kHour = 3'600'000;

const config::StoreDef& scenario_store(const config::ValidatedConfig& cfg, ScenarioKind scenario) {
  for (const auto& s : cfg.doc().stores) {
    if (s.scenario == scenario) return s;
  }
  throw Error(ErrorCode::DanglingReference,
              "sample config has no store for scenario " + std::string(to_string(scenario)));
}

// Total footprint of all stores over time; each store holds its last value
// between records, including after its active window closes.
StoreReport combined(const std::vector<StoreReport>& parts, SimMillis end_ms) {
  StoreReport all;
  all.store_id = "all_day";
  all.entity = "*";
  all.strategy = "combined";
  all.active_to_ms = end_ms;
  std::map<SimMillis, std::vector<std::pair<std::size_t, std::size_t>>> changes;  // t -> (store, units)
  for (std::size_t i = 0; i < parts.size(); ++i) {
    all.budget_units += parts[i].budget_units;
    all.final_units += parts[i].final_units;
    all.point_count += parts[i].point_count;
    for (const auto& p : parts[i].series) changes[p.t_ms].emplace_back(i, p.units);
  }
  std::vector<std::size_t> current(parts.size(), 0);
  std::size_t total = 0;
  for (const auto& [t, updates] : changes) {
    for (const auto& [i, units] : updates) {
      total = total - current[i] + units;
      current[i] = units;
    }
    all.series.push_back({t, total});
    all.peak_units = std::max(all.peak_units, total);
  }
  return all;
}

}  // namespace

MetricsReport run_scenario(ScenarioKind scenario, int interval_s, std::int64_t duration_s, std::uint64_t seed) {
  require_tier(interval_s);
  if (duration_s < interval_s) {
    throw Error(ErrorCode::InvalidArgument, "duration " + std::to_string(duration_s) +
                                                " s is shorter than the interval " + std::to_string(interval_s) + " s");
  }
  const auto cfg = sample_config();
  WorldOptions opts;
  opts.seed = seed;
  opts.automation_filter = scenario;
  opts.config_stores = false;
  opts.script = devices::elderly_day_script(seed);
  World world(cfg, std::move(opts));

  auto spec = store_spec(scenario_store(cfg, scenario));
  spec.interval_s = interval_s;
  world.add_store(std::move(spec));
  world.run_until(duration_s * kMillisPerSecond);

  return make_report(world, std::string(to_string(scenario)) + "@" + std::to_string(interval_s) + "s", scenario,
                     interval_s, duration_s);
}

std::vector<MetricsReport> run_matrix(std::int64_t duration_s, std::uint64_t seed) {
  std::vector<MetricsReport> out;
  for (auto scenario : kAllScenarios) {
    for (int tier : kTiers) out.push_back(run_scenario(scenario, tier, duration_s, seed));
  }
  return out;
}

ElderlyBundle run_24h_elderly(std::uint64_t seed) {
  using memstore::StrategyKind;
  const auto cfg = sample_config();
  WorldOptions opts;
  opts.seed = seed;
  opts.config_stores = false;
  opts.script = devices::elderly_day_script(seed);
  World world(cfg, std::move(opts));

  struct Phase {
    const char* id;
    const char* entity;
    ScenarioKind scenario;
    int interval_s;
    StrategyKind strategy;
    SimMillis from, to;
  };
  const Phase phases[] = {
      {"night_motion", "binary_sensor.motion", ScenarioKind::EveningScene, 15, StrategyKind::BasicLog, 0, 6 * kHour},
      {"morning_temperature", "sensor.room_temperature", ScenarioKind::MorningScene, 30,
       StrategyKind::ExtendedBuffer, 6 * kHour, 9 * kHour},
      {"daytime_manual", "switch.bulb_1", ScenarioKind::ManualTesting, 60, StrategyKind::AggregatedLog, 9 * kHour,
       18 * kHour},
      {"evening_temperature", "sensor.room_temperature", ScenarioKind::LightingTemperature, 120,
       StrategyKind::TrendAnalysis, 18 * kHour, 24 * kHour},
      {"all_day_summary", "sensor.room_temperature", ScenarioKind::ComplexRoom, 300, StrategyKind::SummarizedData, 0,
       24 * kHour},
  };
  for (const auto& p : phases) {
    StoreSpec s;
    s.id = p.id;
    s.entity = EntityId::parse(p.entity);
    s.scenario = p.scenario;
    s.interval_s = p.interval_s;
    s.strategy = p.strategy;
    s.active_from_ms = p.from;
    s.active_to_ms = p.to;
    world.add_store(std::move(s));
  }
  world.run_until(kMillisPerDay);

  const auto whole = make_report(world, "all_day", std::nullopt, 0, kMillisPerDay / kMillisPerSecond);
  ElderlyBundle bundle;
  for (const auto& p : phases) {
    MetricsReport r = whole;
    r.name = p.id;
    r.scenario = p.scenario;
    r.interval_s = p.interval_s;
    r.stores.clear();
    for (const auto& s : whole.stores) {
      if (s.store_id == p.id) r.stores.push_back(s);
    }
    bundle.phases.push_back(std::move(r));
  }
  bundle.all_day = whole;
  bundle.all_day.stores = {combined(whole.stores, kMillisPerDay)};
  return bundle;
}

Json to_json(const ElderlyBundle& bundle) {
  Json j;
  j["phases"] = to_json(bundle.phases);
  j["all_day"] = to_json(bundle.all_day);
  return j;
}

std::vector<std::size_t> row_footprint(const std::vector<MetricsReport>& reports, ScenarioKind scenario) {
  std::vector<std::pair<int, std::size_t>> row;
  for (const auto& r : reports) {
    if (r.scenario == scenario && !r.stores.empty()) row.emplace_back(r.interval_s, r.stores.front().final_units);
  }
  std::sort(row.begin(), row.end());
  std::vector<std::size_t> out;
  for (const auto& [tier, units] : row) out.push_back(units);
  return out;
}

}  // namespace hearth::harness
