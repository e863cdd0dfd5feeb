#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hearth/config/config.hpp"

namespace hearth::devices {

struct DeviceSim {
  EntityId entity;
  DeviceKind kind = DeviceKind::Bulb;
  std::optional<int> cadence_s;  // sensors only; actuators change through services
};

struct Fleet {
  std::vector<config::EntityDef> entities;
  std::vector<DeviceSim> devices;
};

/// The pictured home plus a room thermometer: 14 entities.
Fleet build_fleet();

/// 21 + 4 sin(2 pi t / 86400) degrees C, plus uniform noise in [-0.2, 0.2]
/// drawn from (seed, t) when `noise` is set.
double temperature_at(double t_s, std::uint64_t seed, bool noise = true);

/// Deterministic presence draw for the motion sensor, more likely in the
/// morning and evening than at night.
bool motion_at(SimMillis t, std::uint64_t seed);

}  // namespace hearth::devices
