#include <algorithm>

#include "hearth/automation/engine.hpp"
#include "hearth/core/error.hpp"

namespace hearth::automation {

bool operator==(const AllCondition& a, const AllCondition& b) { return a.conditions == b.conditions; }
bool operator==(const AnyCondition& a, const AnyCondition& b) { return a.conditions == b.conditions; }
bool operator==(const NotCondition& a, const NotCondition& b) { return a.inner == b.inner; }

void collect_entities(const Condition& c, std::vector<EntityId>& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NumericStateCondition> ||
                      std::is_same_v<T, BinaryStateCondition>) {
          out.push_back(v.entity);
        } else if constexpr (std::is_same_v<T, AllCondition> || std::is_same_v<T, AnyCondition>) {
          for (const auto& inner : v.conditions) collect_entities(inner, out);
        } else if constexpr (std::is_same_v<T, NotCondition>) {
          for (const auto& inner : v.inner) collect_entities(inner, out);
        }
      },
      c.v);
}

namespace {

SimMillis ms_of_day(SimMillis t) { return ((t % kMillisPerDay) + kMillisPerDay) % kMillisPerDay; }

// Numeric targets compare by value; the unit is presentation only.
bool same_value(const StateValue& a, const StateValue& b) {
  if (a.is_numeric() && b.is_numeric()) return a.as_double() == b.as_double();
  return a == b;
}

bool state_trigger_fires(const StateTrigger& trig, const Event& e,
                         const std::optional<StateValue>& prev) {
  if (e.event_type != event_types::kStateChanged || e.origin != trig.entity.str() || !e.new_state) {
    return false;
  }
  const StateValue& now = *e.new_state;

  if (trig.above || trig.below) {
    if (!now.is_numeric() || !prev || !prev->is_numeric()) return false;
    const double p = prev->as_double();
    const double n = now.as_double();
    if (trig.above && trig.below) {
      // entering the open band (above, below)
      const auto inside = [&](double x) { return x > *trig.above && x < *trig.below; };
      if (!(inside(n) && !inside(p))) return false;
    } else if (trig.above) {
      if (!(p <= *trig.above && n > *trig.above)) return false;
    } else if (!(p >= *trig.below && n < *trig.below)) {
      return false;
    }
  }
  if (trig.to) {
    if (!same_value(now, *trig.to)) return false;
    if (prev && same_value(*prev, *trig.to)) return false;
  }
  return true;
}

bool time_trigger_fires(const TimeTrigger& trig, const Event& e) {
  if (e.event_type != kTimePatternEvent) return false;
  if (trig.at_ms_of_day) return ms_of_day(e.timestamp) == *trig.at_ms_of_day;
  if (trig.every_ms && *trig.every_ms > 0) return e.timestamp > 0 && e.timestamp % *trig.every_ms == 0;
  return false;
}

StateValue require_state(const StateView& states, const EntityId& id) {
  auto s = states.lookup(id);
  if (!s) throw Error(ErrorCode::UnknownEntity, "condition references unknown entity '" + id.str() + "'");
  return *s;
}

}  // namespace

bool evaluate_trigger(const Trigger& trigger, const Event& stimulus,
                      const std::optional<StateValue>& prev) {
  return std::visit(
      [&](const auto& t) -> bool {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, StateTrigger>) {
          return state_trigger_fires(t, stimulus, prev);
        } else if constexpr (std::is_same_v<T, TimeTrigger>) {
          return time_trigger_fires(t, stimulus);
        } else {
          return stimulus.event_type == t.event_type;
        }
      },
      trigger);
}

bool evaluate_condition(const Condition& cond, const StateView& states, SimMillis now) {
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NumericStateCondition>) {
          const auto s = require_state(states, c.entity);
          if (!s.is_numeric()) return false;
          const double v = s.as_double();
          return (!c.above || v > *c.above) && (!c.below || v < *c.below);
        } else if constexpr (std::is_same_v<T, BinaryStateCondition>) {
          const auto s = require_state(states, c.entity);
          return s.is_binary() && s.as_bool() == c.equals;
        } else if constexpr (std::is_same_v<T, TimeWindowCondition>) {
          const SimMillis t = ms_of_day(now);
          if (c.after <= c.before) return t >= c.after && t < c.before;
          return t >= c.after || t < c.before;
        } else if constexpr (std::is_same_v<T, AllCondition>) {
          return std::all_of(c.conditions.begin(), c.conditions.end(),
                             [&](const Condition& x) { return evaluate_condition(x, states, now); });
        } else if constexpr (std::is_same_v<T, AnyCondition>) {
          return std::any_of(c.conditions.begin(), c.conditions.end(),
                             [&](const Condition& x) { return evaluate_condition(x, states, now); });
        } else {
          return !evaluate_condition(c.inner.at(0), states, now);
        }
      },
      cond.v);
}

}  // namespace hearth::automation
