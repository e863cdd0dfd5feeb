#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "hearth/core/error.hpp"
#include "hearth/harness/sample_config.hpp"
#include "hearth/harness/scenarios.hpp"
#include "hearth/memstore/strategy.hpp"

using namespace hearth;
using namespace hearth::harness;

namespace {

const std::vector<MetricsReport>& matrix() {
  static const auto m = run_matrix();
  return m;
}

void check_report_invariants(const MetricsReport& r) {
  INFO(r.name);
  CHECK(r.events_published == r.breakdown.total());
  CHECK(r.automations_fired == r.breakdown.automation_fired);
  CHECK_FALSE(r.over_budget());
  for (const auto& s : r.stores) {
    INFO(s.store_id);
    CHECK(s.peak_units <= s.budget_units);
    std::size_t max_units = 0;
    for (std::size_t i = 0; i < s.series.size(); ++i) {
      if (i) CHECK(s.series[i - 1].t_ms < s.series[i].t_ms);
      max_units = std::max(max_units, s.series[i].units);
    }
    CHECK(s.peak_units == max_units);
    if (!s.series.empty()) CHECK(s.final_units == s.series.back().units);
  }
}

}  // namespace

TEST_CASE("run_scenario is deterministic per seed") {
  const auto a = run_scenario(ScenarioKind::LightingTemperature, 15, kDefaultDurationS, 7);
  const auto b = run_scenario(ScenarioKind::LightingTemperature, 15, kDefaultDurationS, 7);
  CHECK(a == b);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(to_csv({a}) == to_csv({b}));
  const auto c = run_scenario(ScenarioKind::LightingTemperature, 15, kDefaultDurationS, 8);
  CHECK(to_json(a).dump() != to_json(c).dump());
}

TEST_CASE("rolling averages retain fewer points than raw samples") {
  const auto r = run_scenario(ScenarioKind::LightingTemperature, 60);
  REQUIRE(r.stores.size() == 1);
  CHECK(r.stores[0].strategy == "rolling_average");
  CHECK(r.stores[0].point_count < 86400 / 60);
  // every poll produced a record
  CHECK(r.stores[0].series.size() == 86400 / 60);
}

TEST_CASE("run_scenario validates its arguments") {
  auto code = [](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::MalformedId;
  };
  CHECK(code([] { run_scenario(ScenarioKind::ComplexRoom, 45, 3600); }) == ErrorCode::InvalidTier);
  CHECK(code([] { run_scenario(ScenarioKind::ComplexRoom, 300, 299); }) == ErrorCode::InvalidArgument);
  CHECK_NOTHROW(run_scenario(ScenarioKind::ComplexRoom, 300, 300));
}

TEST_CASE("matrix has one report per cell with the table strategy") {
  const auto& m = matrix();
  REQUIRE(m.size() == 25);
  std::size_t i = 0;
  for (auto scenario : kAllScenarios) {
    for (int tier : kTiers) {
      const auto& r = m[i++];
      INFO(r.name);
      REQUIRE(r.scenario == scenario);
      CHECK(r.interval_s == tier);
      REQUIRE(r.stores.size() == 1);
      CHECK(r.stores[0].strategy == memstore::to_string(memstore::select_strategy(scenario, tier)));
      CHECK(r.stores[0].budget_units == 10240);
      CHECK(r.duration_s == 86400);
      check_report_invariants(r);
    }
  }
}

TEST_CASE("scenario automations fire in the matrix") {
  for (const auto& r : matrix()) {
    INFO(r.name);
    CHECK(r.automations_fired > 0);
  }
}

TEST_CASE("matrix CSV has a header and 25 rows") {
  const auto csv = to_csv(matrix());
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 26);
  CHECK(lines[0] == "scenario,interval_s,strategy,peak_units,final_units,point_count,automations_fired");
  CHECK(lines[1].rfind("lighting_temperature,15,circular_buffer,", 0) == 0);
  CHECK(lines[25].rfind("complex_room,300,summarized_data,", 0) == 0);
}

TEST_CASE("report JSON carries the documented fields") {
  const auto j = to_json(run_scenario(ScenarioKind::EveningScene, 120, 7200));
  for (const char* key : {"name", "scenario", "interval_s", "seed", "duration_s", "automations_fired",
                          "events_published", "events_by_source", "stores"}) {
    CHECK(j.contains(key));
  }
  const auto& s = j["stores"][0];
  for (const char* key : {"store_id", "strategy", "interval_s", "bytes_used", "peak_units", "point_count", "series"}) {
    CHECK(s.contains(key));
  }
  CHECK(j["scenario"] == "evening_scene");
  CHECK(s["series"][0].size() == 2);
}

TEST_CASE("row footprint lists final usage by tier") {
  const auto row = row_footprint(matrix(), ScenarioKind::ComplexRoom);
  REQUIRE(row.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(row[i] == matrix()[20 + i].stores[0].final_units);
}

TEST_CASE("elderly day yields five phase reports and one all-day report") {
  const auto a = run_24h_elderly(7);
  REQUIRE(a.phases.size() == 5);
  const std::vector<std::pair<std::string, int>> expected = {
      {"basic_log", 15}, {"extended_buffer", 30}, {"aggregated_log", 60}, {"trend_analysis", 120},
      {"summarized_data", 300}};
  for (std::size_t i = 0; i < 5; ++i) {
    REQUIRE(a.phases[i].stores.size() == 1);
    CHECK(a.phases[i].stores[0].strategy == expected[i].first);
    CHECK(a.phases[i].stores[0].interval_s == expected[i].second);
    CHECK_FALSE(a.phases[i].stores[0].series.empty());
    check_report_invariants(a.phases[i]);
  }
  // phase windows tile the day
  CHECK(a.phases[0].stores[0].active_from_ms == 0);
  CHECK(a.phases[0].stores[0].active_to_ms == 6 * 3'600'000);
  CHECK(a.phases[3].stores[0].active_to_ms == kMillisPerDay);
  for (std::size_t i = 0; i < 4; ++i) {
    for (const auto& p : a.phases[i].stores[0].series) {
      CHECK(p.t_ms > a.phases[i].stores[0].active_from_ms);
      CHECK(p.t_ms <= a.phases[i].stores[0].active_to_ms);
    }
  }
  REQUIRE(a.all_day.stores.size() == 1);
  check_report_invariants(a.all_day);
  CHECK(a.all_day.automations_fired > 0);

  const auto b = run_24h_elderly(7);
  CHECK(a == b);
  CHECK(to_json(a).dump(2) == to_json(b).dump(2));
}

TEST_CASE("world rejects bad stores") {
  WorldOptions opts;
  opts.config_stores = false;
  World w(sample_config(), opts);
  StoreSpec s;
  s.id = "x";
  s.entity = EntityId::parse("sensor.room_temperature");
  w.add_store(s);
  auto code = [&](StoreSpec spec) {
    try {
      w.add_store(std::move(spec));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::MalformedId;
  };
  CHECK(code(s) == ErrorCode::DuplicateId);
  s.id = "y";
  auto ghost = s;
  ghost.entity = EntityId::parse("light.ghost");
  CHECK(code(ghost) == ErrorCode::UnknownEntity);
  auto tier = s;
  tier.interval_s = 45;
  CHECK(code(tier) == ErrorCode::InvalidTier);
  auto tiny = s;
  tiny.budget_units = 1;
  CHECK(code(tiny) == ErrorCode::BudgetTooSmall);
  CHECK(w.stores().size() == 1);
}

TEST_CASE("world loads the sample config stores and steps time") {
  World w(sample_config(), WorldOptions{});
  CHECK(w.runtime().entity_count() == 14);
  CHECK(w.stores().size() == 5);
  w.run_until(3'600'000);
  CHECK(w.now() == 3'600'000);
  for (const auto& slot : w.stores()) {
    INFO(slot.spec.id);
    CHECK(slot.records == static_cast<std::uint64_t>(3600 / slot.spec.interval_s));
  }
  const auto r = make_report(w, "hour", std::nullopt, 0, 3600);
  check_report_invariants(r);
}
