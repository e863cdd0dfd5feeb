#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hearth/core/types.hpp"

namespace hearth::automation {

// --- triggers -----------------------------------------------------------

/// Fires on a state_changed of `entity`. Numeric thresholds fire on the
/// crossing edge only; `to` fires when the state becomes that value.
/// Everything set must hold. At least one of above/below/to is required.
struct StateTrigger {
  EntityId entity;
  std::optional<double> above;
  std::optional<double> below;
  std::optional<StateValue> to;
  bool operator==(const StateTrigger&) const = default;
};

/// Exactly one of at_ms_of_day / every_ms.
struct TimeTrigger {
  std::optional<SimMillis> at_ms_of_day;
  std::optional<SimMillis> every_ms;
  bool operator==(const TimeTrigger&) const = default;
};

struct EventTrigger {
  std::string event_type;
  bool operator==(const EventTrigger&) const = default;
};

using Trigger = std::variant<StateTrigger, TimeTrigger, EventTrigger>;

/// Stimulus type used for time triggers; never published on the bus.
inline constexpr std::string_view kTimePatternEvent = "time_pattern";

// --- conditions ---------------------------------------------------------

struct Condition;

struct NumericStateCondition {
  EntityId entity;
  std::optional<double> above;
  std::optional<double> below;
  bool operator==(const NumericStateCondition&) const = default;
};

struct BinaryStateCondition {
  EntityId entity;
  bool equals = true;
  bool operator==(const BinaryStateCondition&) const = default;
};

/// [after, before) in ms of day; after > before wraps midnight.
struct TimeWindowCondition {
  SimMillis after = 0;
  SimMillis before = 0;
  bool operator==(const TimeWindowCondition&) const = default;
};

struct AllCondition {
  std::vector<Condition> conditions;
};
struct AnyCondition {
  std::vector<Condition> conditions;
};
/// `inner` holds exactly one condition.
struct NotCondition {
  std::vector<Condition> inner;
};

struct Condition {
  using Variant = std::variant<NumericStateCondition, BinaryStateCondition, TimeWindowCondition,
                               AllCondition, AnyCondition, NotCondition>;
  Variant v;

  static Condition all(std::vector<Condition> c) { return {AllCondition{std::move(c)}}; }
  static Condition any(std::vector<Condition> c) { return {AnyCondition{std::move(c)}}; }
  static Condition negate(Condition c) { return {NotCondition{{std::move(c)}}}; }

  bool operator==(const Condition&) const = default;
};

bool operator==(const AllCondition& a, const AllCondition& b);
bool operator==(const AnyCondition& a, const AnyCondition& b);
bool operator==(const NotCondition& a, const NotCondition& b);

// --- actions, automations, scenes ---------------------------------------

struct CallServiceAction {
  std::string domain;
  std::string name;
  EntityId target;
  Payload data;
  bool operator==(const CallServiceAction&) const = default;
};

struct ActivateSceneAction {
  std::string scene_id;
  bool operator==(const ActivateSceneAction&) const = default;
};

using Action = std::variant<CallServiceAction, ActivateSceneAction>;

/// Triggers are OR-ed, conditions AND-ed, actions run in order.
struct Automation {
  std::string id;
  std::vector<Trigger> triggers;
  std::vector<Condition> conditions;
  std::vector<Action> actions;
  bool enabled = true;
  ScenarioKind scenario = ScenarioKind::ComplexRoom;
  bool operator==(const Automation&) const = default;
};

/// Desired state and/or attributes of one entity in a scene.
struct SceneTarget {
  EntityId entity;
  std::optional<StateValue> state;
  Payload attributes;
  bool operator==(const SceneTarget&) const = default;
};

struct Scene {
  std::string id;
  std::string name;
  std::vector<SceneTarget> targets;  // declaration order
  bool operator==(const Scene&) const = default;
};

/// Every entity id a condition tree mentions.
void collect_entities(const Condition& c, std::vector<EntityId>& out);

}  // namespace hearth::automation
