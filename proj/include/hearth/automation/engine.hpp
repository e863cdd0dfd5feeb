#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hearth/automation/types.hpp"
#include "hearth/core/runtime.hpp"

namespace hearth::automation {

/// True iff `trigger` fires for `stimulus`. `prev` is the entity's state
/// before the change (state triggers only). A stimulus of the wrong family
/// yields false.
///
/// above: prev numeric and <= threshold, new > threshold.
/// below: prev numeric and >= threshold, new < threshold.
/// to:    new == to and prev != to (numeric values compare without unit).
/// Time triggers match a "time_pattern" stimulus whose timestamp lies on the
/// trigger's schedule.
bool evaluate_trigger(const Trigger& trigger, const Event& stimulus,
                      const std::optional<StateValue>& prev);

/// Throws UnknownEntity when a referenced entity is missing from `states`.
/// Numeric/binary conditions against a state of another type are false.
bool evaluate_condition(const Condition& cond, const StateView& states, SimMillis now);

enum class FireStatus { Executed, Skipped };

struct ActionResult {
  std::string action;  // e.g. "light.turn_on light.bulb_1", "scene good_morning"
  bool ok = true;
  std::string error;
};

struct FireOutcome {
  std::string automation_id;
  FireStatus status = FireStatus::Skipped;
  std::vector<ActionResult> results;
  std::size_t error_count() const;
};

struct SceneOutcome {
  std::string scene_id;
  std::vector<ActionResult> results;
  std::size_t error_count() const;
};

/// Service call that realizes one scene target, derived from the entity kind.
struct ServiceInvocation {
  std::string domain;
  std::string name;
  Payload data;
};
/// Throws TypeMismatch when the kind cannot be driven to the target.
std::vector<ServiceInvocation> scene_invocations(DeviceKind kind, const SceneTarget& target);

/// Rule engine and scene manager bound to one runtime. Subscribes to every
/// bus event on construction; time triggers are driven externally through
/// next_due() / fire_due() by whoever owns the clock.
class Engine {
 public:
  explicit Engine(Runtime& runtime);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  /// Both throw DuplicateId.
  void add_scene(Scene scene);
  void add_automation(Automation automation);

  const Automation& automation(const std::string& id) const;  // UnknownAutomation
  const Scene& scene(const std::string& id) const;            // UnknownScene
  std::vector<std::string> automation_ids() const;
  std::vector<std::string> scene_ids() const;
  void set_enabled(const std::string& id, bool enabled);

  /// Evaluates conditions, then runs actions fail-soft. Publishes one
  /// automation_fired event when executed.
  FireOutcome fire(const std::string& automation_id, const Event& stimulus);
  /// Throws UnknownAutomation / Disabled.
  FireOutcome manual_trigger(const std::string& automation_id, bool skip_conditions = false);
  /// Throws UnknownScene; per-target failures are recorded in the outcome.
  SceneOutcome activate_scene(const std::string& scene_id);

  /// Earliest time-trigger instant strictly after `after`, over enabled
  /// automations.
  std::optional<SimMillis> next_due(SimMillis after) const;
  /// Fires every enabled automation with a time trigger scheduled at `t`.
  void fire_due(SimMillis t);

  std::uint64_t fired_count() const noexcept { return fired_; }
  std::uint64_t skipped_count() const noexcept { return skipped_; }

 private:
  void on_event(const Event& e);
  FireOutcome execute(const Automation& a, const Event& stimulus, bool skip_conditions);
  ActionResult run_action(const Action& action);

  Runtime& runtime_;
  SubscriptionHandle subscription_;
  std::map<std::string, Automation> automations_;
  std::map<std::string, Scene> scenes_;
  std::uint64_t fired_ = 0;
  std::uint64_t skipped_ = 0;
};

}  // namespace hearth::automation
