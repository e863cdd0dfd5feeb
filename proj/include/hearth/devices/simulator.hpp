#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hearth/core/runtime.hpp"
#include "hearth/devices/fleet.hpp"
#include "hearth/devices/script.hpp"

namespace hearth::devices {

class VirtualClock {
 public:
  explicit VirtualClock(double speed = 1.0) : speed_(speed) {}
  SimMillis now() const noexcept { return now_; }
  double speed() const noexcept { return speed_; }
  void set_speed(double speed);
  /// Throws InvalidArgument for dt < 0.
  void advance(SimMillis dt);

 private:
  SimMillis now_ = 0;
  double speed_;
};

/// Emits sensor samples on their cadence and replays a script. Sensors with
/// cadence c report at k*c for k >= 1. Everything due at one instant goes
/// out sensors first (by entity id), then script steps in timeline order.
class Simulator {
 public:
  Simulator(Runtime& runtime, std::vector<DeviceSim> devices, std::uint64_t seed,
            ScenarioScript script = {}, bool noise = true);

  /// Earliest instant strictly after `after` with something to emit.
  std::optional<SimMillis> next_due(SimMillis after) const;
  /// Emits everything scheduled exactly at `t` (the runtime clock must not
  /// be past `t`). Returns the events the simulator itself produced.
  std::vector<Event> emit_due(SimMillis t);

  /// Advances `clock` by dt, emitting everything due in (now, now + dt].
  std::vector<Event> tick(VirtualClock& clock, SimMillis dt);

  /// Delivers an external event at the runtime's current time. A
  /// state_changed event with origin and new_state goes through set_state,
  /// anything else is published as is.
  void inject(const Event& event);

  std::uint64_t emissions() const noexcept { return emissions_; }
  std::uint64_t injections() const noexcept { return injections_; }
  /// Injections that were state changes.
  std::uint64_t injected_states() const noexcept { return injected_states_; }
  const std::vector<DeviceSim>& devices() const noexcept { return devices_; }

 private:
  StateValue sample(const DeviceSim& d, SimMillis t) const;
  Event apply_step(const ScriptStep& step);

  Runtime& runtime_;
  std::vector<DeviceSim> devices_;  // sorted by entity id
  std::uint64_t seed_;
  ScenarioScript script_;
  bool noise_;
  std::size_t next_step_ = 0;
  std::uint64_t emissions_ = 0;
  std::uint64_t injections_ = 0;
  std::uint64_t injected_states_ = 0;
};

}  // namespace hearth::devices
