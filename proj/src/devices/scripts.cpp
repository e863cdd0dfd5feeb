#include "hearth/devices/scripts.hpp"

#include <algorithm>
#include <random>

namespace hearth::devices {

namespace {

constexpr SimMillis kMinute = 60'000;
constexpr SimMillis kHour = 60 * kMinute;

}  // namespace

ScenarioScript elderly_day_script(std::uint64_t seed) {
  ScenarioScript s;
  s.name = "elderly_day";
  s.seed = seed;
  s.duration_ms = kMillisPerDay;

  std::mt19937_64 rng(seed ^ 0x5EEDF00DULL);
  std::uniform_int_distribution<SimMillis> jitter(-300, 300);
  auto at = [&](SimMillis base) { return base + jitter(rng) * kMillisPerSecond; };
  const auto id = [](const char* text) { return EntityId::parse(text); };
  const auto on = StateValue::binary(true);
  const auto off = StateValue::binary(false);

  auto state = [&](SimMillis t, const char* entity, const StateValue& v) {
    s.timeline.push_back({t, id(entity), v, std::nullopt});
  };
  auto event = [&](SimMillis t, const char* type, const char* origin) {
    s.timeline.push_back({t, origin ? std::optional(id(origin)) : std::nullopt, std::nullopt, std::string(type)});
  };
  // Lights switched on, then off `minutes` later.
  auto lit = [&](SimMillis base, const char* sw, SimMillis minutes) {
    const SimMillis t = at(base);
    state(t, sw, on);
    state(t + minutes * kMinute, sw, off);
  };
  // Door opened and closed `seconds` later.
  auto door = [&](SimMillis base, SimMillis seconds) {
    const SimMillis t = at(base);
    state(t, "binary_sensor.front_door", on);
    state(t + seconds * kMillisPerSecond, "binary_sensor.front_door", off);
  };

  // night: bathroom trips
  for (SimMillis base : {2 * kHour + 10 * kMinute, 4 * kHour + 40 * kMinute}) {
    const SimMillis t = at(base);
    state(t, "binary_sensor.motion", on);
    state(t + 20 * kMillisPerSecond, "switch.bulb_1", on);
    state(t + 6 * kMinute, "switch.bulb_1", off);
  }
  // morning: lights up, kitchen spotlight
  state(at(6 * kHour + 45 * kMinute), "switch.bulb_2", on);
  lit(7 * kHour + 30 * kMinute, "switch.spotlight", 40);
  // daytime: manual use, a self-test and two short outings
  lit(10 * kHour, "switch.bulb_1", 20);
  event(at(11 * kHour), "manual_test_requested", nullptr);
  door(9 * kHour + 30 * kMinute, 90);
  lit(13 * kHour, "switch.bulb_1", 30);
  door(15 * kHour, 60);
  lit(16 * kHour, "switch.spotlight", 10);
  // evening: coming home, a visitor, a panic-button test, lights out
  door(18 * kHour + 30 * kMinute, 45);
  event(at(19 * kHour + 15 * kMinute), "panic_pressed", "binary_sensor.panic_button");
  door(20 * kHour, 120);
  state(at(22 * kHour + 30 * kMinute), "switch.bulb_2", off);

  std::stable_sort(s.timeline.begin(), s.timeline.end(),
                   [](const ScriptStep& a, const ScriptStep& b) { return a.at_ms < b.at_ms; });
  return s;
}

}  // namespace hearth::devices
