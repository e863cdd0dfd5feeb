#pragma once

#include <cstdint>

#include "hearth/core/runtime.hpp"

namespace hearth::devices {

/// Registers the actuator services the fleet understands:
///   light.turn_on / turn_off / toggle      bulbs and spotlights; data merges into attributes
///   switch.turn_on / turn_off / toggle     switches and outlets
///   climate.set_setpoint {setpoint}        temperature sensor attribute
///   lock.lock / lock.unlock                door sensor attribute "locked"
///   button.press                           panic button, publishes panic_pressed
/// A target of the wrong kind fails the call.
///
/// When `stats` is given, every state change and signal event raised by a
/// handler is counted there.
struct ServiceStats {
  std::uint64_t state_changes = 0;
  std::uint64_t signals = 0;
};
void register_builtin_services(Runtime& runtime, ServiceStats* stats = nullptr);

}  // namespace hearth::devices
