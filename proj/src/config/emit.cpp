#include <yaml-cpp/yaml.h>

#include <charconv>

#include "hearth/config/config.hpp"

namespace hearth::config {

namespace {

std::string number_text(double d) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void quoted(YAML::Emitter& out, const std::string& s) { out << YAML::DoubleQuoted << s; }

void scalar(YAML::Emitter& out, const Scalar& v) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          out << (x ? "true" : "false");
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          out << std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          out << number_text(x);
        } else {
          quoted(out, x);
        }
      },
      v);
}

void state(YAML::Emitter& out, const StateValue& s) {
  if (s.is_binary()) {
    out << (s.as_bool() ? "true" : "false");
  } else if (s.is_numeric()) {
    out << number_text(s.as_double());
  } else {
    out << "unavailable";
  }
}

void payload(YAML::Emitter& out, const Payload& p) {
  out << YAML::BeginMap;
  for (const auto& [k, v] : p) {
    out << YAML::Key << k << YAML::Value;
    scalar(out, v);
  }
  out << YAML::EndMap;
}

template <typename T, typename Fn>
void list(YAML::Emitter& out, const char* key, const std::vector<T>& items, Fn&& each) {
  out << YAML::Key << key << YAML::Value;
  if (items.empty()) {
    out << YAML::Flow << YAML::BeginSeq << YAML::EndSeq;
    return;
  }
  out << YAML::BeginSeq;
  for (const auto& item : items) each(item);
  out << YAML::EndSeq;
}

void condition(YAML::Emitter& out, const automation::Condition& c) {
  out << YAML::BeginMap;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, automation::NumericStateCondition>) {
          out << YAML::Key << "numeric_state" << YAML::Value << YAML::BeginMap;
          out << YAML::Key << "entity" << YAML::Value << v.entity.str();
          if (v.above) out << YAML::Key << "above" << YAML::Value << number_text(*v.above);
          if (v.below) out << YAML::Key << "below" << YAML::Value << number_text(*v.below);
          out << YAML::EndMap;
        } else if constexpr (std::is_same_v<T, automation::BinaryStateCondition>) {
          out << YAML::Key << "binary_state" << YAML::Value << YAML::BeginMap;
          out << YAML::Key << "entity" << YAML::Value << v.entity.str();
          out << YAML::Key << "equals" << YAML::Value << (v.equals ? "true" : "false");
          out << YAML::EndMap;
        } else if constexpr (std::is_same_v<T, automation::TimeWindowCondition>) {
          out << YAML::Key << "time_window" << YAML::Value << YAML::BeginMap;
          out << YAML::Key << "after" << YAML::Value;
          quoted(out, format_time_of_day(v.after));
          out << YAML::Key << "before" << YAML::Value;
          quoted(out, format_time_of_day(v.before));
          out << YAML::EndMap;
        } else if constexpr (std::is_same_v<T, automation::NotCondition>) {
          out << YAML::Key << "not" << YAML::Value;
          condition(out, v.inner.at(0));
        } else {
          out << YAML::Key << (std::is_same_v<T, automation::AllCondition> ? "all" : "any") << YAML::Value;
          out << YAML::BeginSeq;
          for (const auto& inner : v.conditions) condition(out, inner);
          out << YAML::EndSeq;
        }
      },
      c.v);
  out << YAML::EndMap;
}

void trigger(YAML::Emitter& out, const automation::Trigger& t) {
  out << YAML::BeginMap;
  if (const auto* st = std::get_if<automation::StateTrigger>(&t)) {
    out << YAML::Key << "state" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "entity" << YAML::Value << st->entity.str();
    if (st->above) out << YAML::Key << "above" << YAML::Value << number_text(*st->above);
    if (st->below) out << YAML::Key << "below" << YAML::Value << number_text(*st->below);
    if (st->to) {
      out << YAML::Key << "to" << YAML::Value;
      state(out, *st->to);
    }
    out << YAML::EndMap;
  } else if (const auto* tt = std::get_if<automation::TimeTrigger>(&t)) {
    out << YAML::Key << "time" << YAML::Value << YAML::BeginMap;
    if (tt->at_ms_of_day) {
      out << YAML::Key << "at" << YAML::Value;
      quoted(out, format_time_of_day(*tt->at_ms_of_day));
    }
    if (tt->every_ms) out << YAML::Key << "every_ms" << YAML::Value << std::to_string(*tt->every_ms);
    out << YAML::EndMap;
  } else {
    out << YAML::Key << "event" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "type" << YAML::Value;
    quoted(out, std::get<automation::EventTrigger>(t).event_type);
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
}

void action(YAML::Emitter& out, const automation::Action& a) {
  out << YAML::BeginMap;
  if (const auto* call = std::get_if<automation::CallServiceAction>(&a)) {
    out << YAML::Key << "service" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "domain" << YAML::Value;
    quoted(out, call->domain);
    out << YAML::Key << "name" << YAML::Value;
    quoted(out, call->name);
    out << YAML::Key << "target" << YAML::Value << call->target.str();
    if (!call->data.empty()) {
      out << YAML::Key << "data" << YAML::Value;
      payload(out, call->data);
    }
    out << YAML::EndMap;
  } else {
    out << YAML::Key << "scene" << YAML::Value;
    quoted(out, std::get<automation::ActivateSceneAction>(a).scene_id);
  }
  out << YAML::EndMap;
}

}  // namespace

std::string canonical_emit(const ConfigDocument& doc) {
  YAML::Emitter out;
  out.SetIndent(2);
  out << YAML::BeginMap;

  list(out, "entities", doc.entities, [&](const EntityDef& e) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << e.id.str();
    out << YAML::Key << "kind" << YAML::Value << std::string(to_string(e.kind));
    out << YAML::Key << "name" << YAML::Value;
    quoted(out, e.name);
    if (e.initial) {
      out << YAML::Key << "initial" << YAML::Value;
      state(out, *e.initial);
      if (e.initial->is_numeric() && e.initial->unit()) {
        out << YAML::Key << "unit" << YAML::Value;
        quoted(out, *e.initial->unit());
      }
    }
    if (!e.attributes.empty()) {
      out << YAML::Key << "attributes" << YAML::Value;
      payload(out, e.attributes);
    }
    out << YAML::EndMap;
  });

  list(out, "stores", doc.stores, [&](const StoreDef& s) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value;
    quoted(out, s.id);
    out << YAML::Key << "entity" << YAML::Value << s.entity.str();
    out << YAML::Key << "scenario" << YAML::Value << std::string(to_string(s.scenario));
    out << YAML::Key << "interval_s" << YAML::Value << std::to_string(s.interval_s);
    out << YAML::Key << "budget_units" << YAML::Value << std::to_string(s.budget_units);
    out << YAML::EndMap;
  });

  list(out, "scenes", doc.scenes, [&](const automation::Scene& s) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value;
    quoted(out, s.id);
    out << YAML::Key << "name" << YAML::Value;
    quoted(out, s.name);
    list(out, "targets", s.targets, [&](const automation::SceneTarget& t) {
      out << YAML::BeginMap;
      out << YAML::Key << "entity" << YAML::Value << t.entity.str();
      if (t.state) {
        out << YAML::Key << "state" << YAML::Value;
        state(out, *t.state);
      }
      if (!t.attributes.empty()) {
        out << YAML::Key << "attributes" << YAML::Value;
        payload(out, t.attributes);
      }
      out << YAML::EndMap;
    });
    out << YAML::EndMap;
  });

  list(out, "automations", doc.automations, [&](const automation::Automation& a) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value;
    quoted(out, a.id);
    out << YAML::Key << "scenario" << YAML::Value << std::string(to_string(a.scenario));
    out << YAML::Key << "enabled" << YAML::Value << (a.enabled ? "true" : "false");
    list(out, "triggers", a.triggers, [&](const automation::Trigger& t) { trigger(out, t); });
    if (!a.conditions.empty()) {
      list(out, "conditions", a.conditions, [&](const automation::Condition& c) { condition(out, c); });
    }
    list(out, "actions", a.actions, [&](const automation::Action& x) { action(out, x); });
    out << YAML::EndMap;
  });

  if (doc.script) {
    const auto& s = *doc.script;
    out << YAML::Key << "script" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value;
    quoted(out, s.name);
    out << YAML::Key << "seed" << YAML::Value << std::to_string(s.seed);
    out << YAML::Key << "duration_ms" << YAML::Value << std::to_string(s.duration_ms);
    list(out, "timeline", s.timeline, [&](const devices::ScriptStep& step) {
      out << YAML::BeginMap;
      out << YAML::Key << "at_ms" << YAML::Value << std::to_string(step.at_ms);
      if (step.entity) out << YAML::Key << "entity" << YAML::Value << step.entity->str();
      if (step.state) {
        out << YAML::Key << "state" << YAML::Value;
        state(out, *step.state);
      }
      if (step.event) {
        out << YAML::Key << "event" << YAML::Value;
        quoted(out, *step.event);
      }
      out << YAML::EndMap;
    });
    out << YAML::EndMap;
  }

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string canonical_emit(const ValidatedConfig& config) { return canonical_emit(config.doc()); }

}  // namespace hearth::config
