#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hearth/core/types.hpp"

namespace hearth::devices {

/// One timeline entry. Either a state injection (`entity` + `state`) or a
/// bare event (`event`, with `entity` as origin when set).
struct ScriptStep {
  SimMillis at_ms = 0;
  std::optional<EntityId> entity;
  std::optional<StateValue> state;
  std::optional<std::string> event;
  bool operator==(const ScriptStep&) const = default;
};

struct ScenarioScript {
  std::string name;
  std::uint64_t seed = 0;
  SimMillis duration_ms = 0;
  std::vector<ScriptStep> timeline;  // sorted by at_ms
  bool operator==(const ScenarioScript&) const = default;
};

}  // namespace hearth::devices
