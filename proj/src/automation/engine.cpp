#include "hearth/automation/engine.hpp"

#include <algorithm>

#include "hearth/core/error.hpp"

namespace hearth::automation {

std::size_t FireOutcome::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.ok; }));
}

std::size_t SceneOutcome::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.ok; }));
}

std::vector<ServiceInvocation> scene_invocations(DeviceKind kind, const SceneTarget& target) {
  std::vector<ServiceInvocation> calls;
  auto unsupported = [&](const std::string& what) {
    return Error(ErrorCode::TypeMismatch, "scene target '" + target.entity.str() + "' (" +
                                              std::string(to_string(kind)) + ") cannot take " + what);
  };

  switch (kind) {
    case DeviceKind::Bulb:
    case DeviceKind::Spotlight:
    case DeviceKind::Switch:
    case DeviceKind::Outlet: {
      const std::string domain =
          (kind == DeviceKind::Bulb || kind == DeviceKind::Spotlight) ? "light" : "switch";
      if (!target.state) {
        if (target.attributes.empty()) break;
        throw unsupported("attributes without a state");
      }
      if (!target.state->is_binary()) throw unsupported("a " + std::string(target.state->type_name()) + " state");
      if (target.state->as_bool()) {
        calls.push_back({domain, "turn_on", target.attributes});
      } else {
        calls.push_back({domain, "turn_off", target.attributes});
      }
      break;
    }
    case DeviceKind::TemperatureSensor: {
      if (target.state) throw unsupported("a state");
      for (const auto& [key, value] : target.attributes) {
        if (key != "setpoint") throw unsupported("attribute '" + key + "'");
        calls.push_back({"climate", "set_setpoint", {{"setpoint", value}}});
      }
      break;
    }
    case DeviceKind::DoorSensor: {
      if (target.state) throw unsupported("a state");
      for (const auto& [key, value] : target.attributes) {
        const auto* locked = std::get_if<bool>(&value);
        if (key != "locked" || !locked) throw unsupported("attribute '" + key + "'");
        calls.push_back({"lock", *locked ? "lock" : "unlock", {}});
      }
      break;
    }
    default:
      throw unsupported("scene control");
  }
  return calls;
}

Engine::Engine(Runtime& runtime) : runtime_(runtime) {
  subscription_ = runtime_.bus().subscribe(std::string(event_types::kAll),
                                           [this](const Event& e) { on_event(e); });
}

Engine::~Engine() { runtime_.bus().unsubscribe(subscription_); }

void Engine::add_scene(Scene scene) {
  if (scenes_.count(scene.id)) throw Error(ErrorCode::DuplicateId, "scene '" + scene.id + "' exists");
  auto id = scene.id;
  scenes_.emplace(std::move(id), std::move(scene));
}

void Engine::add_automation(Automation automation) {
  if (automations_.count(automation.id)) {
    throw Error(ErrorCode::DuplicateId, "automation '" + automation.id + "' exists");
  }
  auto id = automation.id;
  automations_.emplace(std::move(id), std::move(automation));
}

const Automation& Engine::automation(const std::string& id) const {
  auto it = automations_.find(id);
  if (it == automations_.end()) throw Error(ErrorCode::UnknownAutomation, "no automation '" + id + "'");
  return it->second;
}

const Scene& Engine::scene(const std::string& id) const {
  auto it = scenes_.find(id);
  if (it == scenes_.end()) throw Error(ErrorCode::UnknownScene, "no scene '" + id + "'");
  return it->second;
}

std::vector<std::string> Engine::automation_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : automations_) out.push_back(id);
  return out;
}

std::vector<std::string> Engine::scene_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : scenes_) out.push_back(id);
  return out;
}

void Engine::set_enabled(const std::string& id, bool enabled) {
  automation(id);
  automations_.at(id).enabled = enabled;
}

void Engine::on_event(const Event& e) {
  if (automations_.empty()) return;
  // Match against the pre-action state of the engine; actions may toggle
  // entities that other automations watch, and those arrive as queued events.
  std::vector<const Automation*> matched;
  for (const auto& [id, a] : automations_) {
    if (!a.enabled) continue;
    const bool hit = std::any_of(a.triggers.begin(), a.triggers.end(),
                                 [&](const Trigger& t) { return evaluate_trigger(t, e, e.old_state); });
    if (hit) matched.push_back(&a);
  }
  for (const auto* a : matched) execute(*a, e, false);
}

FireOutcome Engine::fire(const std::string& automation_id, const Event& stimulus) {
  const Automation& a = automation(automation_id);
  if (!a.enabled) throw Error(ErrorCode::Disabled, "automation '" + automation_id + "' is disabled");
  return execute(a, stimulus, false);
}

FireOutcome Engine::manual_trigger(const std::string& automation_id, bool skip_conditions) {
  const Automation& a = automation(automation_id);
  if (!a.enabled) throw Error(ErrorCode::Disabled, "automation '" + automation_id + "' is disabled");
  Event stimulus;
  stimulus.event_type = "manual_trigger";
  stimulus.timestamp = runtime_.now();
  stimulus.origin = "system";
  return execute(a, stimulus, skip_conditions);
}

FireOutcome Engine::execute(const Automation& a, const Event& stimulus, bool skip_conditions) {
  FireOutcome outcome;
  outcome.automation_id = a.id;
  if (!skip_conditions) {
    const SimMillis now = runtime_.now();
    for (const auto& c : a.conditions) {
      bool ok = false;
      try {
        ok = evaluate_condition(c, runtime_, now);
      } catch (const Error& err) {
        outcome.results.push_back({"condition", false, err.what()});
      }
      if (!ok) {
        ++skipped_;
        return outcome;
      }
    }
  }

  outcome.status = FireStatus::Executed;
  for (const auto& action : a.actions) outcome.results.push_back(run_action(action));

  ++fired_;
  Event fired;
  fired.event_type = std::string(event_types::kAutomationFired);
  fired.timestamp = runtime_.now();
  fired.origin = "system";
  fired.payload = {{"automation_id", a.id},
                   {"scenario", std::string(to_string(a.scenario))},
                   {"stimulus", stimulus.event_type},
                   {"actions", static_cast<std::int64_t>(outcome.results.size())},
                   {"errors", static_cast<std::int64_t>(outcome.error_count())}};
  runtime_.bus().publish(std::move(fired));
  return outcome;
}

ActionResult Engine::run_action(const Action& action) {
  return std::visit(
      [&](const auto& act) -> ActionResult {
        using T = std::decay_t<decltype(act)>;
        if constexpr (std::is_same_v<T, CallServiceAction>) {
          ActionResult r{act.domain + "." + act.name + " " + act.target.str(), true, {}};
          try {
            runtime_.call_service(act.domain, act.name, act.target, act.data);
          } catch (const Error& err) {
            r.ok = false;
            r.error = err.what();
          }
          return r;
        } else {
          ActionResult r{"scene " + act.scene_id, true, {}};
          try {
            const auto scene_outcome = activate_scene(act.scene_id);
            if (scene_outcome.error_count() > 0) {
              r.ok = false;
              r.error = std::to_string(scene_outcome.error_count()) + " scene target(s) failed";
            }
          } catch (const Error& err) {
            r.ok = false;
            r.error = err.what();
          }
          return r;
        }
      },
      action);
}

SceneOutcome Engine::activate_scene(const std::string& scene_id) {
  const Scene& s = scene(scene_id);
  SceneOutcome outcome{s.id, {}};
  for (const auto& target : s.targets) {
    try {
      const auto& entity = runtime_.entity(target.entity);
      for (const auto& call : scene_invocations(entity.kind, target)) {
        ActionResult r{call.domain + "." + call.name + " " + target.entity.str(), true, {}};
        try {
          runtime_.call_service(call.domain, call.name, target.entity, call.data);
        } catch (const Error& err) {
          r.ok = false;
          r.error = err.what();
        }
        outcome.results.push_back(std::move(r));
      }
    } catch (const Error& err) {
      outcome.results.push_back({"target " + target.entity.str(), false, err.what()});
    }
  }
  return outcome;
}

std::optional<SimMillis> Engine::next_due(SimMillis after) const {
  std::optional<SimMillis> best;
  auto consider = [&](SimMillis t) {
    if (!best || t < *best) best = t;
  };
  for (const auto& [id, a] : automations_) {
    if (!a.enabled) continue;
    for (const auto& trig : a.triggers) {
      const auto* tt = std::get_if<TimeTrigger>(&trig);
      if (!tt) continue;
      if (tt->at_ms_of_day) {
        const SimMillis day_start = after - (((after % kMillisPerDay) + kMillisPerDay) % kMillisPerDay);
        SimMillis t = day_start + *tt->at_ms_of_day;
        if (t <= after) t += kMillisPerDay;
        consider(t);
      } else if (tt->every_ms && *tt->every_ms > 0) {
        const SimMillis p = *tt->every_ms;
        consider((after >= 0 ? after / p + 1 : 1) * p);
      }
    }
  }
  return best;
}

void Engine::fire_due(SimMillis t) {
  Event stimulus;
  stimulus.event_type = std::string(kTimePatternEvent);
  stimulus.timestamp = t;
  stimulus.origin = "system";
  std::vector<const Automation*> due;
  for (const auto& [id, a] : automations_) {
    if (!a.enabled) continue;
    if (std::any_of(a.triggers.begin(), a.triggers.end(), [&](const Trigger& trig) {
          return std::holds_alternative<TimeTrigger>(trig) && evaluate_trigger(trig, stimulus, std::nullopt);
        })) {
      due.push_back(&a);
    }
  }
  for (const auto* a : due) execute(*a, stimulus, false);
}

}  // namespace hearth::automation
