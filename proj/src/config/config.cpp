#include "hearth/config/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "hearth/core/error.hpp"
#include "hearth/memstore/strategy.hpp"

namespace hearth::config {

namespace {

using automation::Action;
using automation::Automation;
using automation::Condition;
using automation::Scene;
using automation::SceneTarget;
using automation::Trigger;

bool is_plain(const YAML::Node& n) { return n.Tag() != "!"; }

std::optional<std::int64_t> plain_integer(const std::string& s) {
  std::string_view v = s;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) return std::nullopt;
  return out;
}

std::optional<std::uint64_t> plain_unsigned(const std::string& s) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return out;
}

std::optional<double> plain_double(const std::string& s) {
  std::string_view v = s;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  if (v.empty() || !(std::isdigit(static_cast<unsigned char>(v.front())) || v.front() == '-' || v.front() == '.')) {
    return std::nullopt;
  }
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out, std::chars_format::general);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) return std::nullopt;
  return out;
}

/// Walks a YAML tree, recording node positions and turning every shape
/// problem into an Error that names the path.
class Reader {
 public:
  explicit Reader(ConfigDocument& doc) : doc_(doc) {}

  void mark(const std::string& path, const YAML::Node& n) {
    const auto m = n.Mark();
    if (m.line >= 0) doc_.marks[path] = {m.line + 1, m.column + 1};
  }

  [[noreturn]] void fail(ErrorCode code, const std::string& path, const YAML::Node& n,
                         const std::string& msg) {
    SourceLocation loc{path, std::nullopt, std::nullopt};
    const auto m = n.Mark();
    if (m.line >= 0) {
      loc.line = m.line + 1;
      loc.column = m.column + 1;
    }
    if (!doc_.source_name.empty()) loc.path = doc_.source_name + ": " + path;
    throw Error(code, msg, std::move(loc));
  }

  void expect_map(const YAML::Node& n, const std::string& path,
                  std::initializer_list<std::string_view> allowed) {
    mark(path, n);
    if (!n.IsMap()) fail(ErrorCode::WrongType, path, n, "expected a mapping");
    for (const auto& kv : n) {
      const auto key = kv.first.Scalar();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        std::string list;
        for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
        fail(ErrorCode::UnknownKey, join(path, key), kv.first,
             "unknown key '" + key + "' (allowed: " + list + ")");
      }
    }
  }

  YAML::Node required(const YAML::Node& map, const std::string& key, const std::string& path) {
    auto v = map[key];
    if (!v) fail(ErrorCode::MissingKey, join(path, key), map, "missing required key '" + key + "'");
    mark(join(path, key), v);
    return v;
  }

  std::optional<YAML::Node> optional(const YAML::Node& map, const std::string& key,
                                     const std::string& path) {
    auto v = map[key];
    if (!v) return std::nullopt;
    mark(join(path, key), v);
    return v;
  }

  const std::string& scalar_text(const YAML::Node& n, const std::string& path, const char* what) {
    if (!n.IsScalar()) fail(ErrorCode::WrongType, path, n, std::string("expected ") + what);
    return n.Scalar();
  }

  std::string string(const YAML::Node& n, const std::string& path) {
    if (n.IsNull()) fail(ErrorCode::WrongType, path, n, "expected a string, got null");
    return scalar_text(n, path, "a string");
  }

  std::int64_t integer(const YAML::Node& n, const std::string& path) {
    const auto& s = scalar_text(n, path, "an integer");
    auto v = is_plain(n) ? plain_integer(s) : std::nullopt;
    if (!v) fail(ErrorCode::WrongType, path, n, "expected an integer, got '" + s + "'");
    return *v;
  }

  std::uint64_t unsigned_integer(const YAML::Node& n, const std::string& path) {
    const auto& s = scalar_text(n, path, "a non-negative integer");
    auto v = is_plain(n) ? plain_unsigned(s) : std::nullopt;
    if (!v) fail(ErrorCode::WrongType, path, n, "expected a non-negative integer, got '" + s + "'");
    return *v;
  }

  double number(const YAML::Node& n, const std::string& path) {
    const auto& s = scalar_text(n, path, "a number");
    auto v = is_plain(n) ? plain_double(s) : std::nullopt;
    if (!v) fail(ErrorCode::WrongType, path, n, "expected a finite number, got '" + s + "'");
    return *v;
  }

  bool boolean(const YAML::Node& n, const std::string& path) {
    const auto& s = scalar_text(n, path, "a boolean");
    if (is_plain(n) && s == "true") return true;
    if (is_plain(n) && s == "false") return false;
    fail(ErrorCode::WrongType, path, n, "expected true or false, got '" + s + "'");
  }

  Scalar scalar(const YAML::Node& n, const std::string& path) {
    const auto& s = scalar_text(n, path, "a scalar");
    if (n.IsNull()) fail(ErrorCode::WrongType, path, n, "expected a scalar, got null");
    if (!is_plain(n)) return s;
    if (s == "true") return true;
    if (s == "false") return false;
    if (auto i = plain_integer(s)) return *i;
    if (auto d = plain_double(s)) return *d;
    return s;
  }

  StateValue state(const YAML::Node& n, const std::string& path) {
    const Scalar s = scalar(n, path);
    if (const auto* b = std::get_if<bool>(&s)) return StateValue::binary(*b);
    if (auto d = scalar_as_number(s)) return StateValue::numeric(*d);
    if (std::get<std::string>(s) == "unavailable") return StateValue::unavailable();
    fail(ErrorCode::WrongType, path, n, "expected true, false, a number or \"unavailable\"");
  }

  EntityId entity_id(const YAML::Node& n, const std::string& path) {
    const auto text = string(n, path);
    if (!EntityId::is_valid(text)) {
      fail(ErrorCode::MalformedId, path, n,
           "'" + text + "' is not of the form <domain>.<object_id> (lowercase, digits, underscore)");
    }
    return EntityId::parse(text);
  }

  SimMillis time_of_day(const YAML::Node& n, const std::string& path) {
    const auto text = string(n, path);
    auto t = parse_time_of_day(text);
    if (!t) fail(ErrorCode::WrongType, path, n, "expected HH:MM:SS[.mmm] below 24:00:00, got '" + text + "'");
    return *t;
  }

  Payload payload(const YAML::Node& n, const std::string& path) {
    mark(path, n);
    if (n.IsNull()) return {};
    if (!n.IsMap()) fail(ErrorCode::WrongType, path, n, "expected a mapping of scalars");
    Payload out;
    for (const auto& kv : n) {
      const auto key = kv.first.Scalar();
      const auto p = join(path, key);
      mark(p, kv.second);
      out[key] = scalar(kv.second, p);
    }
    return out;
  }

  template <typename Fn>
  void sequence(const YAML::Node& n, const std::string& path, Fn&& each) {
    mark(path, n);
    if (n.IsNull()) return;
    if (!n.IsSequence()) fail(ErrorCode::WrongType, path, n, "expected a list");
    for (std::size_t i = 0; i < n.size(); ++i) {
      const auto p = path + "[" + std::to_string(i) + "]";
      mark(p, n[i]);
      each(n[i], p);
    }
  }

  /// Single-key mapping such as `{state: {...}}`; returns the key.
  std::string variant_key(const YAML::Node& n, const std::string& path,
                          std::initializer_list<std::string_view> allowed) {
    expect_map(n, path, allowed);
    if (n.size() != 1) fail(ErrorCode::WrongType, path, n, "expected exactly one key");
    return n.begin()->first.Scalar();
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  ConfigDocument& doc_;
};

EntityDef read_entity(Reader& r, const YAML::Node& n, const std::string& p) {
  r.expect_map(n, p, {"id", "kind", "name", "initial", "unit", "attributes"});
  EntityDef e;
  e.id = r.entity_id(r.required(n, "id", p), p + ".id");
  const auto kind_node = r.required(n, "kind", p);
  const auto kind_text = r.string(kind_node, p + ".kind");
  auto kind = parse_device_kind(kind_text);
  if (!kind) {
    std::string list;
    for (auto k : kAllDeviceKinds) list += (list.empty() ? "" : ", ") + std::string(to_string(k));
    r.fail(ErrorCode::WrongType, p + ".kind", kind_node, "unknown device kind '" + kind_text + "' (one of " + list + ")");
  }
  e.kind = *kind;
  if (auto v = r.optional(n, "name", p)) {
    e.name = r.string(*v, p + ".name");
  } else {
    e.name = std::string(e.id.object_id());
  }
  if (auto v = r.optional(n, "initial", p)) e.initial = r.state(*v, p + ".initial");
  if (auto v = r.optional(n, "unit", p)) {
    if (!e.initial || !e.initial->is_numeric()) {
      r.fail(ErrorCode::WrongType, p + ".unit", *v, "unit is only allowed with a numeric initial state");
    }
    e.initial = StateValue::numeric(e.initial->as_double(), r.string(*v, p + ".unit"));
  }
  if (auto v = r.optional(n, "attributes", p)) e.attributes = r.payload(*v, p + ".attributes");
  return e;
}

ScenarioKind read_scenario(Reader& r, const YAML::Node& n, const std::string& p) {
  const auto text = r.string(n, p);
  auto s = parse_scenario_kind(text);
  if (!s) {
    std::string list;
    for (auto k : kAllScenarios) list += (list.empty() ? "" : ", ") + std::string(to_string(k));
    r.fail(ErrorCode::WrongType, p, n, "unknown scenario '" + text + "' (one of " + list + ")");
  }
  return *s;
}

StoreDef read_store(Reader& r, const YAML::Node& n, const std::string& p) {
  r.expect_map(n, p, {"id", "entity", "scenario", "interval_s", "budget_units"});
  StoreDef s;
  s.id = r.string(r.required(n, "id", p), p + ".id");
  s.entity = r.entity_id(r.required(n, "entity", p), p + ".entity");
  if (auto v = r.optional(n, "scenario", p)) s.scenario = read_scenario(r, *v, p + ".scenario");
  s.interval_s = static_cast<int>(r.integer(r.required(n, "interval_s", p), p + ".interval_s"));
  if (auto v = r.optional(n, "budget_units", p)) {
    s.budget_units = static_cast<int>(r.integer(*v, p + ".budget_units"));
  }
  return s;
}

Scene read_scene(Reader& r, const YAML::Node& n, const std::string& p) {
  r.expect_map(n, p, {"id", "name", "targets"});
  Scene s;
  s.id = r.string(r.required(n, "id", p), p + ".id");
  s.name = s.id;
  if (auto v = r.optional(n, "name", p)) s.name = r.string(*v, p + ".name");
  r.sequence(r.required(n, "targets", p), p + ".targets", [&](const YAML::Node& t, const std::string& tp) {
    r.expect_map(t, tp, {"entity", "state", "attributes"});
    SceneTarget target;
    target.entity = r.entity_id(r.required(t, "entity", tp), tp + ".entity");
    if (auto v = r.optional(t, "state", tp)) target.state = r.state(*v, tp + ".state");
    if (auto v = r.optional(t, "attributes", tp)) target.attributes = r.payload(*v, tp + ".attributes");
    s.targets.push_back(std::move(target));
  });
  return s;
}

Trigger read_trigger(Reader& r, const YAML::Node& n, const std::string& p) {
  const auto key = r.variant_key(n, p, {"state", "time", "event"});
  const auto body = n[key];
  const auto bp = p + "." + key;
  r.mark(bp, body);
  if (key == "state") {
    r.expect_map(body, bp, {"entity", "above", "below", "to"});
    automation::StateTrigger t;
    t.entity = r.entity_id(r.required(body, "entity", bp), bp + ".entity");
    if (auto v = r.optional(body, "above", bp)) t.above = r.number(*v, bp + ".above");
    if (auto v = r.optional(body, "below", bp)) t.below = r.number(*v, bp + ".below");
    if (auto v = r.optional(body, "to", bp)) t.to = r.state(*v, bp + ".to");
    return t;
  }
  if (key == "time") {
    r.expect_map(body, bp, {"at", "every_ms"});
    automation::TimeTrigger t;
    if (auto v = r.optional(body, "at", bp)) t.at_ms_of_day = r.time_of_day(*v, bp + ".at");
    if (auto v = r.optional(body, "every_ms", bp)) t.every_ms = r.integer(*v, bp + ".every_ms");
    return t;
  }
  r.expect_map(body, bp, {"type"});
  return automation::EventTrigger{r.string(r.required(body, "type", bp), bp + ".type")};
}

Condition read_condition(Reader& r, const YAML::Node& n, const std::string& p) {
  const auto key = r.variant_key(n, p, {"numeric_state", "binary_state", "time_window", "all", "any", "not"});
  const auto body = n[key];
  const auto bp = p + "." + key;
  r.mark(bp, body);
  if (key == "numeric_state") {
    r.expect_map(body, bp, {"entity", "above", "below"});
    automation::NumericStateCondition c;
    c.entity = r.entity_id(r.required(body, "entity", bp), bp + ".entity");
    if (auto v = r.optional(body, "above", bp)) c.above = r.number(*v, bp + ".above");
    if (auto v = r.optional(body, "below", bp)) c.below = r.number(*v, bp + ".below");
    return {c};
  }
  if (key == "binary_state") {
    r.expect_map(body, bp, {"entity", "equals"});
    automation::BinaryStateCondition c;
    c.entity = r.entity_id(r.required(body, "entity", bp), bp + ".entity");
    if (auto v = r.optional(body, "equals", bp)) c.equals = r.boolean(*v, bp + ".equals");
    return {c};
  }
  if (key == "time_window") {
    r.expect_map(body, bp, {"after", "before"});
    automation::TimeWindowCondition c;
    c.after = r.time_of_day(r.required(body, "after", bp), bp + ".after");
    c.before = r.time_of_day(r.required(body, "before", bp), bp + ".before");
    return {c};
  }
  if (key == "not") return Condition::negate(read_condition(r, body, bp));
  std::vector<Condition> kids;
  r.sequence(body, bp, [&](const YAML::Node& c, const std::string& cp) { kids.push_back(read_condition(r, c, cp)); });
  return key == "all" ? Condition::all(std::move(kids)) : Condition::any(std::move(kids));
}

Action read_action(Reader& r, const YAML::Node& n, const std::string& p) {
  const auto key = r.variant_key(n, p, {"service", "scene"});
  const auto body = n[key];
  const auto bp = p + "." + key;
  r.mark(bp, body);
  if (key == "scene") return automation::ActivateSceneAction{r.string(body, bp)};
  r.expect_map(body, bp, {"domain", "name", "target", "data"});
  automation::CallServiceAction a;
  a.domain = r.string(r.required(body, "domain", bp), bp + ".domain");
  a.name = r.string(r.required(body, "name", bp), bp + ".name");
  a.target = r.entity_id(r.required(body, "target", bp), bp + ".target");
  if (auto v = r.optional(body, "data", bp)) a.data = r.payload(*v, bp + ".data");
  return a;
}

Automation read_automation(Reader& r, const YAML::Node& n, const std::string& p) {
  r.expect_map(n, p, {"id", "scenario", "enabled", "triggers", "conditions", "actions"});
  Automation a;
  a.id = r.string(r.required(n, "id", p), p + ".id");
  if (auto v = r.optional(n, "scenario", p)) a.scenario = read_scenario(r, *v, p + ".scenario");
  if (auto v = r.optional(n, "enabled", p)) a.enabled = r.boolean(*v, p + ".enabled");
  r.sequence(r.required(n, "triggers", p), p + ".triggers",
             [&](const YAML::Node& t, const std::string& tp) { a.triggers.push_back(read_trigger(r, t, tp)); });
  if (auto v = r.optional(n, "conditions", p)) {
    r.sequence(*v, p + ".conditions",
               [&](const YAML::Node& c, const std::string& cp) { a.conditions.push_back(read_condition(r, c, cp)); });
  }
  r.sequence(r.required(n, "actions", p), p + ".actions",
             [&](const YAML::Node& x, const std::string& xp) { a.actions.push_back(read_action(r, x, xp)); });
  return a;
}

devices::ScenarioScript read_script(Reader& r, const YAML::Node& n, const std::string& p) {
  r.expect_map(n, p, {"name", "seed", "duration_ms", "timeline"});
  devices::ScenarioScript s;
  s.name = r.string(r.required(n, "name", p), p + ".name");
  if (auto v = r.optional(n, "seed", p)) s.seed = r.unsigned_integer(*v, p + ".seed");
  s.duration_ms = r.integer(r.required(n, "duration_ms", p), p + ".duration_ms");
  if (auto v = r.optional(n, "timeline", p)) {
    r.sequence(*v, p + ".timeline", [&](const YAML::Node& st, const std::string& sp) {
      r.expect_map(st, sp, {"at_ms", "entity", "state", "event"});
      devices::ScriptStep step;
      step.at_ms = r.integer(r.required(st, "at_ms", sp), sp + ".at_ms");
      if (auto e = r.optional(st, "entity", sp)) step.entity = r.entity_id(*e, sp + ".entity");
      if (auto e = r.optional(st, "state", sp)) step.state = r.state(*e, sp + ".state");
      if (auto e = r.optional(st, "event", sp)) step.event = r.string(*e, sp + ".event");
      s.timeline.push_back(std::move(step));
    });
  }
  return s;
}

// --- validation ---------------------------------------------------------

class Validator {
 public:
  explicit Validator(const ConfigDocument& doc) : doc_(doc) {}

  [[noreturn]] void fail(ErrorCode code, const std::string& path, const std::string& msg) const {
    SourceLocation loc{doc_.source_name.empty() ? path : doc_.source_name + ": " + path, std::nullopt,
                       std::nullopt};
    // nearest recorded ancestor supplies line/column
    std::string probe = path;
    while (!probe.empty()) {
      auto it = doc_.marks.find(probe);
      if (it != doc_.marks.end()) {
        loc.line = it->second.first;
        loc.column = it->second.second;
        break;
      }
      const auto cut = probe.find_last_of(".[");
      probe = cut == std::string::npos ? std::string() : probe.substr(0, cut);
    }
    throw Error(code, msg, std::move(loc));
  }

  void run() {
    check_entities();
    check_stores();
    check_scenes();
    check_automations();
    check_script();
  }

 private:
  void require_entity(const EntityId& id, const std::string& path, const std::string& referrer) const {
    if (!entities_.count(id)) {
      fail(ErrorCode::DanglingReference, path,
           referrer + " references unknown entity '" + id.str() + "'");
    }
  }

  void check_entities() {
    for (std::size_t i = 0; i < doc_.entities.size(); ++i) {
      const auto& e = doc_.entities[i];
      const auto p = "entities[" + std::to_string(i) + "]";
      if (!entities_.emplace(e.id, e.kind).second) {
        fail(ErrorCode::DuplicateId, p + ".id", "entity '" + e.id.str() + "' is defined twice");
      }
      if (e.initial) {
        const bool binary = is_binary_kind(e.kind);
        if ((binary && e.initial->is_numeric()) || (!binary && e.initial->is_binary())) {
          fail(ErrorCode::TypeMismatch, p + ".initial",
               std::string(to_string(e.kind)) + " cannot start in state " + e.initial->to_string());
        }
      }
    }
  }

  void check_stores() {
    std::set<std::string> ids;
    for (std::size_t i = 0; i < doc_.stores.size(); ++i) {
      const auto& s = doc_.stores[i];
      const auto p = "stores[" + std::to_string(i) + "]";
      if (s.id.empty()) fail(ErrorCode::InvalidArgument, p + ".id", "store id must be non-empty");
      if (!ids.insert(s.id).second) fail(ErrorCode::DuplicateId, p + ".id", "store '" + s.id + "' is defined twice");
      require_entity(s.entity, p + ".entity", "store '" + s.id + "'");
      if (!is_valid_tier(s.interval_s)) {
        fail(ErrorCode::InvalidTier, p + ".interval_s",
             "interval_s " + std::to_string(s.interval_s) + " is not one of " + tier_set_string());
      }
      const auto strategy = memstore::select_strategy(s.scenario, s.interval_s);
      const auto need = memstore::min_record_units(strategy);
      if (s.budget_units < static_cast<int>(need)) {
        fail(ErrorCode::BudgetTooSmall, p + ".budget_units",
             "budget " + std::to_string(s.budget_units) + " cannot hold one " +
                 std::string(memstore::to_string(strategy)) + " record (" + std::to_string(need) + " units)");
      }
    }
  }

  void check_scenes() {
    for (std::size_t i = 0; i < doc_.scenes.size(); ++i) {
      const auto& s = doc_.scenes[i];
      const auto p = "scenes[" + std::to_string(i) + "]";
      if (s.id.empty()) fail(ErrorCode::InvalidArgument, p + ".id", "scene id must be non-empty");
      if (!scenes_.insert(s.id).second) fail(ErrorCode::DuplicateId, p + ".id", "scene '" + s.id + "' is defined twice");
      if (s.targets.empty()) fail(ErrorCode::InvalidArgument, p + ".targets", "scene '" + s.id + "' has no targets");
      for (std::size_t j = 0; j < s.targets.size(); ++j) {
        require_entity(s.targets[j].entity, p + ".targets[" + std::to_string(j) + "].entity", "scene '" + s.id + "'");
      }
    }
  }

  void check_condition(const Condition& c, const std::string& p, const std::string& who) const {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, automation::NumericStateCondition>) {
            require_entity(v.entity, p + ".numeric_state.entity", who);
            if (!v.above && !v.below) fail(ErrorCode::InvalidArgument, p + ".numeric_state", "needs above and/or below");
          } else if constexpr (std::is_same_v<T, automation::BinaryStateCondition>) {
            require_entity(v.entity, p + ".binary_state.entity", who);
          } else if constexpr (std::is_same_v<T, automation::TimeWindowCondition>) {
          } else if constexpr (std::is_same_v<T, automation::NotCondition>) {
            if (v.inner.size() != 1) fail(ErrorCode::InvalidArgument, p + ".not", "not takes exactly one condition");
            check_condition(v.inner[0], p + ".not", who);
          } else {
            const char* key = std::is_same_v<T, automation::AllCondition> ? ".all" : ".any";
            if (v.conditions.empty()) fail(ErrorCode::InvalidArgument, p + key, "condition list must be non-empty");
            for (std::size_t i = 0; i < v.conditions.size(); ++i) {
              check_condition(v.conditions[i], p + key + "[" + std::to_string(i) + "]", who);
            }
          }
        },
        c.v);
  }

  void check_automations() {
    std::set<std::string> ids;
    for (std::size_t i = 0; i < doc_.automations.size(); ++i) {
      const auto& a = doc_.automations[i];
      const auto p = "automations[" + std::to_string(i) + "]";
      const auto who = "automation '" + a.id + "'";
      if (a.id.empty()) fail(ErrorCode::InvalidArgument, p + ".id", "automation id must be non-empty");
      if (!ids.insert(a.id).second) fail(ErrorCode::DuplicateId, p + ".id", who + " is defined twice");
      if (a.triggers.empty()) fail(ErrorCode::InvalidArgument, p + ".triggers", who + " needs at least one trigger");
      if (a.actions.empty()) fail(ErrorCode::InvalidArgument, p + ".actions", who + " needs at least one action");
      for (std::size_t j = 0; j < a.triggers.size(); ++j) {
        const auto tp = p + ".triggers[" + std::to_string(j) + "]";
        if (const auto* st = std::get_if<automation::StateTrigger>(&a.triggers[j])) {
          require_entity(st->entity, tp + ".state.entity", who);
          if (!st->above && !st->below && !st->to) {
            fail(ErrorCode::InvalidArgument, tp + ".state", "state trigger needs above, below or to");
          }
        } else if (const auto* tt = std::get_if<automation::TimeTrigger>(&a.triggers[j])) {
          if (tt->at_ms_of_day.has_value() == tt->every_ms.has_value()) {
            fail(ErrorCode::InvalidArgument, tp + ".time", "time trigger needs exactly one of at / every_ms");
          }
          if (tt->every_ms && *tt->every_ms <= 0) {
            fail(ErrorCode::InvalidArgument, tp + ".time.every_ms", "every_ms must be positive");
          }
        } else if (std::get<automation::EventTrigger>(a.triggers[j]).event_type.empty()) {
          fail(ErrorCode::InvalidArgument, tp + ".event.type", "event type must be non-empty");
        }
      }
      for (std::size_t j = 0; j < a.conditions.size(); ++j) {
        check_condition(a.conditions[j], p + ".conditions[" + std::to_string(j) + "]", who);
      }
      for (std::size_t j = 0; j < a.actions.size(); ++j) {
        const auto ap = p + ".actions[" + std::to_string(j) + "]";
        if (const auto* call = std::get_if<automation::CallServiceAction>(&a.actions[j])) {
          require_entity(call->target, ap + ".service.target", who);
        } else {
          const auto& scene = std::get<automation::ActivateSceneAction>(a.actions[j]).scene_id;
          if (!scenes_.count(scene)) {
            fail(ErrorCode::DanglingReference, ap + ".scene", who + " references unknown scene '" + scene + "'");
          }
        }
      }
    }
  }

  void check_script() {
    if (!doc_.script) return;
    const auto& s = *doc_.script;
    if (s.duration_ms <= 0) fail(ErrorCode::InvalidArgument, "script.duration_ms", "duration must be positive");
    SimMillis last = 0;
    for (std::size_t i = 0; i < s.timeline.size(); ++i) {
      const auto& step = s.timeline[i];
      const auto p = "script.timeline[" + std::to_string(i) + "]";
      if (step.at_ms < last) fail(ErrorCode::InvalidArgument, p + ".at_ms", "timeline must be sorted by at_ms");
      if (step.at_ms < 0) fail(ErrorCode::InvalidArgument, p + ".at_ms", "at_ms must be non-negative");
      last = step.at_ms;
      if (step.entity) require_entity(*step.entity, p + ".entity", "script step");
      if (step.state.has_value() == step.event.has_value()) {
        fail(ErrorCode::InvalidArgument, p, "a step sets either a state or an event");
      }
      if (step.state) {
        if (!step.entity) fail(ErrorCode::MissingKey, p + ".entity", "a state step needs an entity");
        const bool binary = is_binary_kind(entities_.at(*step.entity));
        if ((binary && step.state->is_numeric()) || (!binary && step.state->is_binary())) {
          fail(ErrorCode::TypeMismatch, p + ".state", "state does not fit '" + step.entity->str() + "'");
        }
      }
    }
  }

  const ConfigDocument& doc_;
  std::map<EntityId, DeviceKind> entities_;
  std::set<std::string> scenes_;
};

}  // namespace

std::string format_time_of_day(SimMillis ms) {
  const SimMillis h = ms / 3'600'000, m = ms / 60'000 % 60, s = ms / 1000 % 60, rest = ms % 1000;
  char buf[32];
  if (rest == 0) {
    std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld", static_cast<long long>(h),
                  static_cast<long long>(m), static_cast<long long>(s));
  } else {
    std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld.%03lld", static_cast<long long>(h),
                  static_cast<long long>(m), static_cast<long long>(s), static_cast<long long>(rest));
  }
  return buf;
}

std::optional<SimMillis> parse_time_of_day(std::string_view text) {
  auto field = [&](std::size_t pos, std::size_t len, int max) -> std::optional<int> {
    if (pos + len > text.size()) return std::nullopt;
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
      v = v * 10 + (text[i] - '0');
    }
    if (v > max) return std::nullopt;
    return v;
  };
  if (text.size() != 8 && text.size() != 12) return std::nullopt;
  if (text[2] != ':' || text[5] != ':') return std::nullopt;
  auto h = field(0, 2, 23), m = field(3, 2, 59), s = field(6, 2, 59);
  if (!h || !m || !s) return std::nullopt;
  SimMillis out = (*h * 3600LL + *m * 60LL + *s) * 1000LL;
  if (text.size() == 12) {
    if (text[8] != '.') return std::nullopt;
    auto ms = field(9, 3, 999);
    if (!ms) return std::nullopt;
    out += *ms;
  }
  return out;
}

const EntityDef* ValidatedConfig::find_entity(const EntityId& id) const {
  for (const auto& e : doc_.entities) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

ConfigDocument parse(const std::string& text, const std::string& source_name) {
  ConfigDocument doc;
  doc.source_name = source_name == "<string>" ? std::string() : source_name;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::SyntaxError, e.msg,
                SourceLocation{source_name, e.mark.line + 1, e.mark.column + 1});
  }
  if (!root || root.IsNull()) return doc;

  Reader r(doc);
  r.expect_map(root, "", {"entities", "stores", "scenes", "automations", "script"});
  if (auto v = r.optional(root, "entities", "")) {
    r.sequence(*v, "entities", [&](const YAML::Node& n, const std::string& p) { doc.entities.push_back(read_entity(r, n, p)); });
  }
  if (auto v = r.optional(root, "stores", "")) {
    r.sequence(*v, "stores", [&](const YAML::Node& n, const std::string& p) { doc.stores.push_back(read_store(r, n, p)); });
  }
  if (auto v = r.optional(root, "scenes", "")) {
    r.sequence(*v, "scenes", [&](const YAML::Node& n, const std::string& p) { doc.scenes.push_back(read_scene(r, n, p)); });
  }
  if (auto v = r.optional(root, "automations", "")) {
    r.sequence(*v, "automations",
               [&](const YAML::Node& n, const std::string& p) { doc.automations.push_back(read_automation(r, n, p)); });
  }
  if (auto v = r.optional(root, "script", "")) doc.script = read_script(r, *v, "script");
  return doc;
}

ConfigDocument parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

ValidatedConfig validate(ConfigDocument doc) {
  Validator(doc).run();
  return ValidatedConfig(std::move(doc));
}

}  // namespace hearth::config
