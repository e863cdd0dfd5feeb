#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hearth/automation/engine.hpp"
#include "hearth/config/config.hpp"
#include "hearth/core/runtime.hpp"
#include "hearth/devices/services.hpp"
#include "hearth/devices/simulator.hpp"
#include "hearth/memstore/store.hpp"

namespace hearth::harness {

/// A telemetry store attached to one entity. When `strategy` is unset it is
/// chosen from (scenario, interval_s). The store polls its entity at every
/// multiple of interval_s inside (active_from_ms, active_to_ms].
struct StoreSpec {
  std::string id;
  EntityId entity;
  ScenarioKind scenario = ScenarioKind::ComplexRoom;
  int interval_s = 15;
  int budget_units = config::kDefaultBudgetUnits;
  std::optional<memstore::StrategyKind> strategy;
  SimMillis active_from_ms = 0;
  SimMillis active_to_ms = std::numeric_limits<SimMillis>::max();
};

StoreSpec store_spec(const config::StoreDef& def);

struct SeriesPoint {
  SimMillis t_ms = 0;
  std::size_t units = 0;
  bool operator==(const SeriesPoint&) const = default;
};

struct StoreSlot {
  StoreSpec spec;
  memstore::Store store;
  std::vector<SeriesPoint> series;  // one point per record, bytes_used after it
  std::size_t peak_units = 0;
  std::uint64_t records = 0;
  std::optional<StateValue> last_seen;
};

struct WorldOptions {
  std::uint64_t seed = 7;
  bool noise = true;
  /// Load only automations tagged with this scenario; all when unset.
  std::optional<ScenarioKind> automation_filter;
  /// Stores from the config are attached unless this is false.
  bool config_stores = true;
  devices::ScenarioScript script;
};

/// Runtime, engine, simulator and stores wired from one validated config,
/// stepped on simulated time. Within one instant the order is: sensor
/// samples and script steps, then time triggers, then store polls (by id).
class World {
 public:
  World(const config::ValidatedConfig& cfg, WorldOptions opts);
  World(const World&) = delete;
  World& operator=(const World&) = delete;

  Runtime& runtime() noexcept { return *runtime_; }
  const Runtime& runtime() const noexcept { return *runtime_; }
  automation::Engine& engine() noexcept { return *engine_; }
  const automation::Engine& engine() const noexcept { return *engine_; }
  devices::Simulator& simulator() noexcept { return *sim_; }
  const devices::Simulator& simulator() const noexcept { return *sim_; }

  /// Throws DuplicateId, UnknownEntity, InvalidTier or BudgetTooSmall.
  void add_store(StoreSpec spec);
  const std::vector<StoreSlot>& stores() const noexcept { return stores_; }

  /// Processes every scheduled instant up to and including `t`.
  void run_until(SimMillis t);
  void advance(SimMillis dt) { run_until(now() + dt); }
  SimMillis now() const noexcept { return runtime_->now(); }

  std::uint64_t seed() const noexcept { return opts_.seed; }
  const devices::ServiceStats& service_stats() const noexcept { return service_stats_; }

 private:
  std::optional<SimMillis> next_instant(SimMillis after) const;
  void process(SimMillis t);
  void poll(StoreSlot& slot, SimMillis t);

  WorldOptions opts_;
  devices::ServiceStats service_stats_;
  std::unique_ptr<Runtime> runtime_;
  std::unique_ptr<automation::Engine> engine_;
  std::unique_ptr<devices::Simulator> sim_;
  std::vector<StoreSlot> stores_;  // sorted by id
  SimMillis processed_ = -1;
};

}  // namespace hearth::harness
