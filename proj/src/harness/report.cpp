#include "hearth/harness/report.hpp"

#include <algorithm>
#include <sstream>

namespace hearth::harness {

bool MetricsReport::over_budget() const {
  return std::any_of(stores.begin(), stores.end(),
                     [](const StoreReport& s) { return s.peak_units > s.budget_units; });
}

StoreReport report_store(const StoreSlot& slot, SimMillis end_ms) {
  StoreReport r;
  r.store_id = slot.spec.id;
  r.entity = slot.spec.entity.str();
  r.strategy = std::string(memstore::to_string(slot.store.strategy()));
  r.interval_s = slot.spec.interval_s;
  r.budget_units = slot.store.budget_units();
  r.active_from_ms = slot.spec.active_from_ms;
  r.active_to_ms = std::min(slot.spec.active_to_ms, end_ms);
  r.series = slot.series;
  r.peak_units = slot.peak_units;
  r.final_units = slot.store.bytes_used();
  r.point_count = slot.store.point_count();
  return r;
}

MetricsReport make_report(const World& world, std::string name, std::optional<ScenarioKind> scenario,
                          int interval_s, std::int64_t duration_s) {
  MetricsReport r;
  r.name = std::move(name);
  r.scenario = scenario;
  r.interval_s = interval_s;
  r.seed = world.seed();
  r.duration_s = duration_s;
  for (const auto& slot : world.stores()) r.stores.push_back(report_store(slot, world.now()));
  r.automations_fired = world.engine().fired_count();
  r.events_published = world.runtime().bus().published_count();

  auto& b = r.breakdown;
  b.device_emissions = world.simulator().emissions();
  b.injections = world.simulator().injections();
  b.service_state_changes = world.service_stats().state_changes;
  b.service_signals = world.service_stats().signals;
  b.service_executed = world.runtime().counters().service_executed;
  b.automation_fired = world.engine().fired_count();
  return r;
}

Json to_json(const StoreReport& r) {
  Json j;
  j["store_id"] = r.store_id;
  j["entity"] = r.entity;
  j["strategy"] = r.strategy;
  j["interval_s"] = r.interval_s;
  j["budget_units"] = r.budget_units;
  j["active_from_ms"] = r.active_from_ms;
  j["active_to_ms"] = r.active_to_ms;
  j["peak_units"] = r.peak_units;
  j["bytes_used"] = r.final_units;
  j["point_count"] = r.point_count;
  Json series = Json::array();
  for (const auto& p : r.series) series.push_back(Json::array({p.t_ms, p.units}));
  j["series"] = std::move(series);
  return j;
}

Json to_json(const MetricsReport& r) {
  Json j;
  j["name"] = r.name;
  j["scenario"] = r.scenario ? Json(std::string(to_string(*r.scenario))) : Json(nullptr);
  j["interval_s"] = r.interval_s;
  j["seed"] = r.seed;
  j["duration_s"] = r.duration_s;
  j["automations_fired"] = r.automations_fired;
  j["events_published"] = r.events_published;
  j["events_by_source"] = {{"device_emissions", r.breakdown.device_emissions},
                           {"injections", r.breakdown.injections},
                           {"service_state_changes", r.breakdown.service_state_changes},
                           {"service_signals", r.breakdown.service_signals},
                           {"service_executed", r.breakdown.service_executed},
                           {"automation_fired", r.breakdown.automation_fired}};
  Json stores = Json::array();
  for (const auto& s : r.stores) stores.push_back(to_json(s));
  j["stores"] = std::move(stores);
  return j;
}

Json to_json(const std::vector<MetricsReport>& reports) {
  Json j = Json::array();
  for (const auto& r : reports) j.push_back(to_json(r));
  return j;
}

std::string to_csv(const std::vector<MetricsReport>& reports) {
  std::ostringstream out;
  out << "scenario,interval_s,strategy,peak_units,final_units,point_count,automations_fired\n";
  for (const auto& r : reports) {
    const std::string scenario = r.scenario ? std::string(to_string(*r.scenario)) : r.name;
    for (const auto& s : r.stores) {
      out << scenario << ',' << s.interval_s << ',' << s.strategy << ',' << s.peak_units << ',' << s.final_units
          << ',' << s.point_count << ',' << r.automations_fired << '\n';
    }
  }
  return out.str();
}

}  // namespace hearth::harness
