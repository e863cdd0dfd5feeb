#include "hearth/devices/fleet.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace hearth::devices {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt, std::int64_t t) {
  return seed * 0x9E3779B97F4A7C15ULL ^ (salt << 48) ^ static_cast<std::uint64_t>(t);
}

}  // namespace

Fleet build_fleet() {
  struct Row {
    const char* id;
    DeviceKind kind;
    const char* name;
    std::optional<int> cadence;
    Payload attributes;
  };
  const std::vector<Row> rows = {
      {"light.bulb_1", DeviceKind::Bulb, "Bulb 1", std::nullopt, {{"brightness", std::int64_t{254}}}},
      {"light.bulb_2", DeviceKind::Bulb, "Bulb 2", std::nullopt, {{"brightness", std::int64_t{254}}}},
      {"light.spotlight", DeviceKind::Spotlight, "Spotlight", std::nullopt,
       {{"brightness", std::int64_t{254}}, {"color", std::string("red")}}},
      {"binary_sensor.motion", DeviceKind::MotionSensor, "Motion sensor", 15, {}},
      {"switch.bulb_1", DeviceKind::Switch, "Switch bulb 1", std::nullopt, {}},
      {"switch.bulb_2", DeviceKind::Switch, "Switch bulb 2", std::nullopt, {}},
      {"switch.spotlight", DeviceKind::Switch, "Switch spotlight", std::nullopt, {}},
      {"binary_sensor.smoke", DeviceKind::SmokeSensor, "Smoke sensor", 300, {}},
      {"binary_sensor.carbon_monoxide", DeviceKind::COSensor, "Carbon monoxide sensor", 300, {}},
      {"binary_sensor.flood", DeviceKind::FloodSensor, "Flood sensor", 300, {}},
      {"binary_sensor.panic_button", DeviceKind::PanicButton, "Panic button", std::nullopt, {}},
      {"binary_sensor.front_door", DeviceKind::DoorSensor, "Front door", 30, {{"locked", false}}},
      {"switch.outlet", DeviceKind::Outlet, "Outlet", std::nullopt, {}},
      {"sensor.room_temperature", DeviceKind::TemperatureSensor, "Room temperature", 15, {{"setpoint", 21.0}}},
  };
  Fleet f;
  for (const auto& r : rows) {
    const auto id = EntityId::parse(r.id);
    f.entities.push_back({id, r.kind, r.name, std::nullopt, r.attributes});
    f.devices.push_back({id, r.kind, r.cadence});
  }
  return f;
}

double temperature_at(double t_s, std::uint64_t seed, bool noise) {
  double v = 21.0 + 4.0 * std::sin(2.0 * std::numbers::pi * t_s / 86400.0);
  if (noise) {
    std::mt19937_64 gen(mix(seed, 1, static_cast<std::int64_t>(std::llround(t_s * 1000.0))));
    v += std::uniform_real_distribution<double>(-0.2, 0.2)(gen);
  }
  return v;
}

bool motion_at(SimMillis t, std::uint64_t seed) {
  const SimMillis hour = (t % kMillisPerDay) / 3'600'000;
  double p = 0.05;
  if (hour >= 6 && hour < 9) {
    p = 0.5;
  } else if (hour >= 9 && hour < 18) {
    p = 0.3;
  } else if (hour >= 18 && hour < 23) {
    p = 0.6;
  } else if (hour >= 23) {
    p = 0.1;
  }
  std::mt19937_64 gen(mix(seed, 2, t));
  return std::uniform_real_distribution<double>(0.0, 1.0)(gen) < p;
}

}  // namespace hearth::devices
