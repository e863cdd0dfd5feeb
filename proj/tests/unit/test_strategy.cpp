#include <catch2/catch_amalgamated.hpp>

#include "hearth/core/error.hpp"
#include "hearth/memstore/strategy.hpp"

using namespace hearth;
using namespace hearth::memstore;

TEST_CASE("select_strategy reproduces every table cell", "[strategy]") {
  using enum StrategyKind;
  struct Cell {
    ScenarioKind scenario;
    int interval;
    StrategyKind expected;
  };
  // Normalized from the published table: "Rolling buffer" -> CircularBuffer,
  // "Log recent events" -> BasicLog, log rows' "Summarized data" -> SummarizedLog.
  const std::vector<Cell> table = {
      {ScenarioKind::LightingTemperature, 15, CircularBuffer},
      {ScenarioKind::LightingTemperature, 30, ExtendedBuffer},
      {ScenarioKind::LightingTemperature, 60, RollingAverage},
      {ScenarioKind::LightingTemperature, 120, TrendAnalysis},
      {ScenarioKind::LightingTemperature, 300, SummarizedData},
      {ScenarioKind::ManualTesting, 15, BasicLog},
      {ScenarioKind::ManualTesting, 30, ExtendedLog},
      {ScenarioKind::ManualTesting, 60, AggregatedLog},
      {ScenarioKind::ManualTesting, 120, AggregatedLog},
      {ScenarioKind::ManualTesting, 300, SummarizedLog},
      {ScenarioKind::MorningScene, 15, CircularBuffer},
      {ScenarioKind::MorningScene, 30, ExtendedBuffer},
      {ScenarioKind::MorningScene, 60, RollingAverage},
      {ScenarioKind::MorningScene, 120, RollingAverage},
      {ScenarioKind::MorningScene, 300, SummarizedData},
      {ScenarioKind::EveningScene, 15, BasicLog},
      {ScenarioKind::EveningScene, 30, ExtendedLog},
      {ScenarioKind::EveningScene, 60, AggregatedLog},
      {ScenarioKind::EveningScene, 120, AggregatedLog},
      {ScenarioKind::EveningScene, 300, SummarizedLog},
      {ScenarioKind::ComplexRoom, 15, CircularBuffer},
      {ScenarioKind::ComplexRoom, 30, ExtendedBuffer},
      {ScenarioKind::ComplexRoom, 60, RollingAverage},
      {ScenarioKind::ComplexRoom, 120, TrendAnalysis},
      {ScenarioKind::ComplexRoom, 300, SummarizedData},
  };
  REQUIRE(table.size() == 25);
  for (const auto& c : table) {
    INFO(to_string(c.scenario) << " @ " << c.interval);
    CHECK(select_strategy(c.scenario, c.interval) == c.expected);
  }
}

TEST_CASE("select_strategy rejects unknown tiers", "[strategy]") {
  try {
    select_strategy(ScenarioKind::ComplexRoom, 45);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidTier);
    CHECK(std::string(e.what()).find("{15,30,60,120,300}") != std::string::npos);
  }
}

TEST_CASE("strategy names round-trip", "[strategy]") {
  for (auto k : kAllStrategies) CHECK(parse_strategy(to_string(k)) == k);
  CHECK_FALSE(parse_strategy("bogus").has_value());
}

TEST_CASE("extended variants double their base", "[strategy]") {
  CHECK(default_params(StrategyKind::ExtendedBuffer, 30).capacity ==
        2 * default_params(StrategyKind::CircularBuffer, 15).capacity);
  CHECK(default_params(StrategyKind::ExtendedLog, 30).capacity ==
        2 * default_params(StrategyKind::BasicLog, 15).capacity);
}
