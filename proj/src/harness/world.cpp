#include "hearth/harness/world.hpp"

#include <algorithm>

#include "hearth/core/error.hpp"
#include "hearth/devices/fleet.hpp"

namespace hearth::harness {

StoreSpec store_spec(const config::StoreDef& def) {
  StoreSpec s;
  s.id = def.id;
  s.entity = def.entity;
  s.scenario = def.scenario;
  s.interval_s = def.interval_s;
  s.budget_units = def.budget_units;
  return s;
}

World::World(const config::ValidatedConfig& cfg, WorldOptions opts)
    : opts_(std::move(opts)), runtime_(std::make_unique<Runtime>()) {
  const auto& doc = cfg.doc();
  for (const auto& e : doc.entities) {
    runtime_->register_entity({e.id, e.kind, e.name, e.initial ? *e.initial : initial_state(e.kind), e.attributes, 0, 0});
  }
  devices::register_builtin_services(*runtime_, &service_stats_);

  engine_ = std::make_unique<automation::Engine>(*runtime_);
  for (const auto& s : doc.scenes) engine_->add_scene(s);
  for (const auto& a : doc.automations) {
    if (!opts_.automation_filter || a.scenario == *opts_.automation_filter) engine_->add_automation(a);
  }

  std::vector<devices::DeviceSim> sims;
  for (const auto& d : devices::build_fleet().devices) {
    if (runtime_->contains(d.entity) && runtime_->entity(d.entity).kind == d.kind) sims.push_back(d);
  }
  sim_ = std::make_unique<devices::Simulator>(*runtime_, std::move(sims), opts_.seed, opts_.script, opts_.noise);

  if (opts_.config_stores) {
    for (const auto& s : doc.stores) add_store(store_spec(s));
  }
}

void World::add_store(StoreSpec spec) {
  if (std::any_of(stores_.begin(), stores_.end(), [&](const StoreSlot& s) { return s.spec.id == spec.id; })) {
    throw Error(ErrorCode::DuplicateId, "store '" + spec.id + "' already attached");
  }
  runtime_->entity(spec.entity);
  require_tier(spec.interval_s);
  if (spec.budget_units <= 0) throw Error(ErrorCode::BudgetTooSmall, "store '" + spec.id + "' has no budget");
  const auto strategy = spec.strategy ? *spec.strategy : memstore::select_strategy(spec.scenario, spec.interval_s);
  auto store = memstore::Store::create(strategy, spec.interval_s, static_cast<std::size_t>(spec.budget_units));
  StoreSlot slot{std::move(spec), std::move(store), {}, 0, 0, std::nullopt};
  auto pos = std::lower_bound(stores_.begin(), stores_.end(), slot.spec.id,
                              [](const StoreSlot& s, const std::string& id) { return s.spec.id < id; });
  stores_.insert(pos, std::move(slot));
}

std::optional<SimMillis> World::next_instant(SimMillis after) const {
  std::optional<SimMillis> best = sim_->next_due(after);
  auto consider = [&](std::optional<SimMillis> t) {
    if (t && (!best || *t < *best)) best = t;
  };
  consider(engine_->next_due(after));
  for (const auto& s : stores_) {
    const SimMillis period = static_cast<SimMillis>(s.spec.interval_s) * kMillisPerSecond;
    const SimMillis from = std::max(after, s.spec.active_from_ms);
    const SimMillis t = (from < 0 ? 1 : from / period + 1) * period;
    if (t <= s.spec.active_to_ms) consider(t);
  }
  return best;
}

void World::poll(StoreSlot& slot, SimMillis t) {
  const auto state = runtime_->get_state(slot.spec.entity);
  const double t_s = static_cast<double>(t) / 1000.0;
  const auto strategy = slot.store.strategy();
  if (memstore::is_log_strategy(strategy)) {
    const bool changed = !slot.last_seen || !(*slot.last_seen == state);
    slot.store.record(memstore::LogEntry{t_s, changed ? "state_changed" : "state_reported", slot.spec.entity.str(),
                                         state.to_string(), 1});
  } else if (state.is_numeric()) {
    slot.store.record(memstore::Sample{t_s, state.as_double()});
  } else if (state.is_binary()) {
    slot.store.record(memstore::Sample{t_s, state.as_bool() ? 1.0 : 0.0});
  } else {
    slot.last_seen = state;
    return;
  }
  slot.last_seen = state;
  ++slot.records;
  const std::size_t used = slot.store.bytes_used();
  slot.series.push_back({t, used});
  slot.peak_units = std::max(slot.peak_units, used);
}

void World::process(SimMillis t) {
  runtime_->advance_to(t);
  sim_->emit_due(t);
  if (engine_->next_due(t - 1) == t) engine_->fire_due(t);
  for (auto& slot : stores_) {
    const SimMillis period = static_cast<SimMillis>(slot.spec.interval_s) * kMillisPerSecond;
    if (t > 0 && t % period == 0 && t > slot.spec.active_from_ms && t <= slot.spec.active_to_ms) poll(slot, t);
  }
  processed_ = t;
}

void World::run_until(SimMillis t) {
  while (auto next = next_instant(processed_)) {
    if (*next > t) break;
    process(*next);
  }
  if (t > runtime_->now()) runtime_->advance_to(t);
  processed_ = std::max(processed_, t);
}

}  // namespace hearth::harness
