#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hearth/automation/types.hpp"
#include "hearth/core/types.hpp"
#include "hearth/devices/script.hpp"

namespace hearth::config {

inline constexpr int kDefaultBudgetUnits = 10240;

struct EntityDef {
  EntityId id;
  DeviceKind kind = DeviceKind::Bulb;
  std::string name;
  std::optional<StateValue> initial;
  Payload attributes;
  bool operator==(const EntityDef&) const = default;
};

struct StoreDef {
  std::string id;
  EntityId entity;
  ScenarioKind scenario = ScenarioKind::ComplexRoom;
  int interval_s = 15;
  int budget_units = kDefaultBudgetUnits;
  bool operator==(const StoreDef&) const = default;
};

/// Line/column of every parsed node, keyed by path ("stores[2].interval_s").
/// Lets validation point back into the source text.
using SourceMap = std::map<std::string, std::pair<int, int>>;

struct ConfigDocument {
  std::vector<EntityDef> entities;
  std::vector<StoreDef> stores;
  std::vector<automation::Scene> scenes;
  std::vector<automation::Automation> automations;
  std::optional<devices::ScenarioScript> script;

  std::string source_name;  // file name for diagnostics
  SourceMap marks;

  /// Structural equality; ignores source_name and marks.
  bool operator==(const ConfigDocument& o) const {
    return entities == o.entities && stores == o.stores && scenes == o.scenes &&
           automations == o.automations && script == o.script;
  }
};

/// A document whose references all resolve. Only validate() creates one.
class ValidatedConfig {
 public:
  const ConfigDocument& doc() const noexcept { return doc_; }
  const EntityDef* find_entity(const EntityId& id) const;
  bool operator==(const ValidatedConfig& o) const { return doc_ == o.doc_; }

 private:
  friend ValidatedConfig validate(ConfigDocument doc);
  explicit ValidatedConfig(ConfigDocument doc) : doc_(std::move(doc)) {}
  ConfigDocument doc_;
};

/// Throws SyntaxError (with line/column), UnknownKey, WrongType, MissingKey
/// or MalformedId. Every error carries the offending path.
ConfigDocument parse(const std::string& text, const std::string& source_name = "<string>");
ConfigDocument parse_file(const std::string& path);

/// Throws DuplicateId, DanglingReference, InvalidTier, TypeMismatch or
/// InvalidArgument (structural invariants such as an empty scene).
ValidatedConfig validate(ConfigDocument doc);

/// Deterministic YAML with a fixed key order; parse(canonical_emit(c)) == c.
std::string canonical_emit(const ValidatedConfig& config);
std::string canonical_emit(const ConfigDocument& doc);

/// "HH:MM:SS" or "HH:MM:SS.mmm" for a millisecond-of-day value.
std::string format_time_of_day(SimMillis ms);
/// Inverse of format_time_of_day; nullopt on malformed text or >= 24h.
std::optional<SimMillis> parse_time_of_day(std::string_view text);

}  // namespace hearth::config
