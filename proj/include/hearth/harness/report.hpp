#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hearth/core/json.hpp"
#include "hearth/harness/world.hpp"

namespace hearth::harness {

struct StoreReport {
  std::string store_id;
  std::string entity;
  std::string strategy;
  int interval_s = 0;
  std::size_t budget_units = 0;
  SimMillis active_from_ms = 0;
  SimMillis active_to_ms = 0;
  std::vector<SeriesPoint> series;
  std::size_t peak_units = 0;
  std::size_t final_units = 0;
  std::size_t point_count = 0;
  bool operator==(const StoreReport&) const = default;
};

/// Where the bus traffic of a run came from, counted at each producer.
struct EventBreakdown {
  std::uint64_t device_emissions = 0;
  std::uint64_t injections = 0;
  std::uint64_t service_state_changes = 0;  // state_changed caused by service handlers
  std::uint64_t service_signals = 0;        // other events raised inside services
  std::uint64_t service_executed = 0;
  std::uint64_t automation_fired = 0;
  std::uint64_t total() const {
    return device_emissions + injections + service_state_changes + service_signals + service_executed +
           automation_fired;
  }
  bool operator==(const EventBreakdown&) const = default;
};

struct MetricsReport {
  std::string name;
  std::optional<ScenarioKind> scenario;
  int interval_s = 0;
  std::uint64_t seed = 0;
  std::int64_t duration_s = 0;
  std::vector<StoreReport> stores;
  std::uint64_t automations_fired = 0;
  std::uint64_t events_published = 0;
  EventBreakdown breakdown;

  /// True if any store's peak exceeded its budget.
  bool over_budget() const;
  bool operator==(const MetricsReport&) const = default;
};

StoreReport report_store(const StoreSlot& slot, SimMillis end_ms);
/// Snapshot of a finished world.
MetricsReport make_report(const World& world, std::string name, std::optional<ScenarioKind> scenario,
                          int interval_s, std::int64_t duration_s);

Json to_json(const StoreReport& r);
Json to_json(const MetricsReport& r);
Json to_json(const std::vector<MetricsReport>& reports);

/// Header plus one row per store per report:
/// scenario,interval_s,strategy,peak_units,final_units,point_count,automations_fired
std::string to_csv(const std::vector<MetricsReport>& reports);

}  // namespace hearth::harness
