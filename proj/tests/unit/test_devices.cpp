#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "hearth/core/error.hpp"
#include "hearth/core/json.hpp"
#include "hearth/devices/fleet.hpp"
#include "hearth/devices/scripts.hpp"
#include "hearth/devices/services.hpp"
#include "hearth/devices/simulator.hpp"
#include "hearth/harness/sample_config.hpp"
#include "hearth/harness/world.hpp"

using namespace hearth;
using namespace hearth::devices;

namespace {

void load(Runtime& rt, const Fleet& f) {
  for (const auto& e : f.entities) {
    Entity ent;
    ent.id = e.id;
    ent.kind = e.kind;
    ent.name = e.name;
    ent.state = e.initial.value_or(initial_state(e.kind));
    ent.attributes = e.attributes;
    rt.register_entity(std::move(ent));
  }
}

std::string serialize(const std::vector<Event>& events) {
  std::string out;
  for (const auto& e : events) out += to_json(e).dump() + "\n";
  return out;
}

std::vector<Event> run_day(std::uint64_t seed, SimMillis step) {
  Runtime rt;
  const auto fleet = build_fleet();
  load(rt, fleet);
  register_builtin_services(rt);
  Simulator sim(rt, fleet.devices, seed, elderly_day_script(seed));
  VirtualClock clock;
  std::vector<Event> all;
  while (clock.now() < kMillisPerDay) {
    auto batch = sim.tick(clock, std::min(step, kMillisPerDay - clock.now()));
    all.insert(all.end(), batch.begin(), batch.end());
  }
  return all;
}

}  // namespace

TEST_CASE("fleet has 13 pictured devices plus a thermometer") {
  const auto f = build_fleet();
  REQUIRE(f.entities.size() == 14);
  REQUIRE(f.devices.size() == 14);
  std::set<EntityId> ids;
  std::map<DeviceKind, int> histogram;
  for (const auto& e : f.entities) {
    ids.insert(e.id);
    ++histogram[e.kind];
  }
  CHECK(ids.size() == 14);
  CHECK(histogram[DeviceKind::Bulb] == 2);
  CHECK(histogram[DeviceKind::Spotlight] == 1);
  CHECK(histogram[DeviceKind::MotionSensor] == 1);
  CHECK(histogram[DeviceKind::Switch] == 3);
  CHECK(histogram[DeviceKind::SmokeSensor] == 1);
  CHECK(histogram[DeviceKind::COSensor] == 1);
  CHECK(histogram[DeviceKind::FloodSensor] == 1);
  CHECK(histogram[DeviceKind::PanicButton] == 1);
  CHECK(histogram[DeviceKind::DoorSensor] == 1);
  CHECK(histogram[DeviceKind::Outlet] == 1);
  CHECK(histogram[DeviceKind::TemperatureSensor] == 1);
}

TEST_CASE("fleet matches the sample config entity list") {
  const auto cfg = harness::sample_config();
  CHECK(build_fleet().entities == cfg.doc().entities);
}

TEST_CASE("sensors start unavailable or off") {
  Runtime rt;
  load(rt, build_fleet());
  for (const auto& e : rt.enumerate()) {
    if (!is_sensor_kind(e.kind)) continue;
    if (e.kind == DeviceKind::TemperatureSensor) {
      CHECK(e.state.is_unavailable());
    } else {
      CHECK(e.state == StateValue::binary(false));
    }
  }
}

TEST_CASE("sensor cadences are legal tiers") {
  for (const auto& d : build_fleet().devices) {
    if (is_sensor_kind(d.kind) && d.kind != DeviceKind::PanicButton) {
      REQUIRE(d.cadence_s);
      CHECK(is_valid_tier(*d.cadence_s));
    } else {
      CHECK_FALSE(d.cadence_s);
    }
  }
}

TEST_CASE("temperature model") {
  CHECK(temperature_at(0, 7, false) == Catch::Approx(21.0).margin(1e-12));
  CHECK(temperature_at(21600, 7, false) == Catch::Approx(25.0).margin(1e-12));
  CHECK(temperature_at(64800, 7, false) == Catch::Approx(17.0).margin(1e-12));
  CHECK(temperature_at(1234.5, 9) == temperature_at(1234.5, 9));
  bool differs = false;
  for (int t = 0; t < 86400; t += 15) {
    const double clean = temperature_at(t, 3, false);
    const double noisy = temperature_at(t, 3);
    CHECK(noisy - clean >= -0.2);
    CHECK(noisy - clean <= 0.2);
    differs = differs || temperature_at(t, 3) != temperature_at(t, 4);
  }
  CHECK(differs);
}

TEST_CASE("motion is deterministic and busier in the evening than at night") {
  int night = 0, evening = 0;
  for (SimMillis t = 0; t < 6 * 3'600'000; t += 15'000) night += motion_at(t, 5) ? 1 : 0;
  for (SimMillis t = 18 * 3'600'000; t < 23 * 3'600'000; t += 15'000) evening += motion_at(t, 5) ? 1 : 0;
  CHECK(night < 1440 / 10);
  CHECK(evening > 1200 / 2);
  CHECK(motion_at(123'000, 5) == motion_at(123'000, 5));
}

TEST_CASE("virtual clock only moves forward") {
  VirtualClock c(60.0);
  CHECK(c.speed() == 60.0);
  c.advance(0);
  CHECK(c.now() == 0);
  c.advance(250);
  CHECK(c.now() == 250);
  CHECK_THROWS_AS(c.advance(-1), Error);
  CHECK_THROWS_AS(c.set_speed(-1.0), Error);
  c.set_speed(0.0);
  CHECK(c.speed() == 0.0);
}

TEST_CASE("advancing 15 s emits exactly the 15 s devices, once each") {
  Runtime rt;
  const auto fleet = build_fleet();
  load(rt, fleet);
  Simulator sim(rt, fleet.devices, 1);
  VirtualClock clock;
  CHECK(sim.tick(clock, 0).empty());
  const auto events = sim.tick(clock, 15'000);
  std::set<std::string> fast;
  for (const auto& d : fleet.devices)
    if (d.cadence_s == 15) fast.insert(d.entity.str());
  REQUIRE(events.size() == fast.size());
  std::set<std::string> seen;
  for (const auto& e : events) {
    CHECK(e.timestamp == 15'000);
    CHECK(e.event_type == "state_changed");
    seen.insert(e.origin);
  }
  CHECK(seen == fast);
  // tie-break by entity id
  for (std::size_t i = 1; i < events.size(); ++i) CHECK(events[i - 1].origin < events[i].origin);
  CHECK(rt.get_state(EntityId::parse("sensor.room_temperature")).unit() == std::optional<std::string>("°C"));
}

TEST_CASE("over D seconds a device with cadence c emits floor(D/c) samples") {
  const auto fleet = build_fleet();
  for (SimMillis d_s : {0, 14, 15, 299, 300, 3601, 86400}) {
    Runtime rt;
    load(rt, fleet);
    Simulator sim(rt, fleet.devices, 2);
    VirtualClock clock;
    std::map<std::string, int> count;
    // uneven steps so cadence boundaries fall inside ticks
    SimMillis left = d_s * 1000;
    SimMillis step = 7'321;
    while (left > 0) {
      const SimMillis dt = std::min(step, left);
      for (const auto& e : sim.tick(clock, dt)) ++count[e.origin];
      left -= dt;
      step = step * 3 % 50'000 + 1;
    }
    for (const auto& dev : fleet.devices) {
      if (!dev.cadence_s) continue;
      INFO(dev.entity.str() << " over " << d_s << " s");
      CHECK(count[dev.entity.str()] == d_s / *dev.cadence_s);
    }
  }
}

TEST_CASE("same seed and script give identical event sequences at any step size") {
  const auto a = serialize(run_day(11, 60'000));
  const auto b = serialize(run_day(11, 60'000));
  const auto c = serialize(run_day(11, 997));
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a != serialize(run_day(12, 60'000)));
}

TEST_CASE("elderly script is sorted, spans a day and touches every phase") {
  const auto s = elderly_day_script(7);
  CHECK(s.duration_ms == kMillisPerDay);
  REQUIRE_FALSE(s.timeline.empty());
  int phase[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < s.timeline.size(); ++i) {
    if (i) CHECK(s.timeline[i - 1].at_ms <= s.timeline[i].at_ms);
    const SimMillis h = s.timeline[i].at_ms / 3'600'000;
    CHECK(h < 24);
    ++phase[h < 6 ? 0 : h < 9 ? 1 : h < 18 ? 2 : 3];
  }
  for (int p : phase) CHECK(p > 0);
  CHECK(elderly_day_script(7) == s);
  CHECK_FALSE(elderly_day_script(8) == s);
}

TEST_CASE("injected panic press reaches the bus") {
  Runtime rt;
  const auto fleet = build_fleet();
  load(rt, fleet);
  Simulator sim(rt, fleet.devices, 1);
  std::vector<Event> got;
  rt.bus().subscribe("panic_pressed", [&](const Event& e) { got.push_back(e); });
  rt.advance_to(5'000);
  Event e;
  e.event_type = "panic_pressed";
  e.origin = "binary_sensor.panic_button";
  sim.inject(e);
  REQUIRE(got.size() == 1);
  CHECK(got[0].timestamp == 5'000);
  CHECK(got[0].origin == "binary_sensor.panic_button");
  CHECK(sim.injections() == 1);
  CHECK(sim.injected_states() == 0);
}

TEST_CASE("injected door open sets the door sensor and publishes one change") {
  Runtime rt;
  const auto fleet = build_fleet();
  load(rt, fleet);
  Simulator sim(rt, fleet.devices, 1);
  int changes = 0;
  rt.bus().subscribe("state_changed", [&](const Event& e) {
    ++changes;
    CHECK(e.origin == "binary_sensor.front_door");
    CHECK(e.new_state == StateValue::binary(true));
  });
  Event e;
  e.event_type = "state_changed";
  e.origin = "binary_sensor.front_door";
  e.new_state = StateValue::binary(true);
  sim.inject(e);
  CHECK(changes == 1);
  CHECK(rt.get_state(EntityId::parse("binary_sensor.front_door")) == StateValue::binary(true));
  CHECK(sim.injected_states() == 1);
}

TEST_CASE("toggling a switch drives its bulb through the wiring automation") {
  harness::WorldOptions opts;
  opts.config_stores = false;
  harness::World world(harness::sample_config(), opts);
  const auto bulb = EntityId::parse("light.bulb_1");
  int service_calls = 0;
  world.runtime().bus().subscribe("service_executed", [&](const Event&) { ++service_calls; });
  CHECK(world.runtime().get_state(bulb) == StateValue::binary(false));

  Event on;
  on.event_type = "state_changed";
  on.origin = "switch.bulb_1";
  on.new_state = StateValue::binary(true);
  world.simulator().inject(on);
  CHECK(world.runtime().get_state(bulb) == StateValue::binary(true));
  CHECK(service_calls == 1);

  on.new_state = StateValue::binary(false);
  world.simulator().inject(on);
  CHECK(world.runtime().get_state(bulb) == StateValue::binary(false));
  CHECK(service_calls == 2);
}

TEST_CASE("builtin services act on the right kinds only") {
  Runtime rt;
  load(rt, build_fleet());
  ServiceStats stats;
  register_builtin_services(rt, &stats);
  const auto bulb = EntityId::parse("light.bulb_2");
  const auto door = EntityId::parse("binary_sensor.front_door");
  const auto temp = EntityId::parse("sensor.room_temperature");

  rt.call_service("light", "turn_on", bulb, {{"brightness", std::int64_t{120}}});
  CHECK(rt.get_state(bulb) == StateValue::binary(true));
  CHECK(rt.entity(bulb).attributes.at("brightness") == Scalar(std::int64_t{120}));
  rt.call_service("light", "toggle", bulb);
  CHECK(rt.get_state(bulb) == StateValue::binary(false));

  rt.call_service("switch", "turn_on", EntityId::parse("switch.outlet"));
  CHECK(rt.get_state(EntityId::parse("switch.outlet")) == StateValue::binary(true));

  rt.call_service("climate", "set_setpoint", temp, {{"setpoint", 19.5}});
  CHECK(rt.entity(temp).attributes.at("setpoint") == Scalar(19.5));
  rt.call_service("lock", "lock", door);
  CHECK(rt.entity(door).attributes.at("locked") == Scalar(true));
  rt.call_service("lock", "unlock", door);
  CHECK(rt.entity(door).attributes.at("locked") == Scalar(false));

  int panics = 0;
  rt.bus().subscribe("panic_pressed", [&](const Event&) { ++panics; });
  rt.call_service("button", "press", EntityId::parse("binary_sensor.panic_button"));
  CHECK(panics == 1);

  CHECK(stats.state_changes == 3);
  CHECK(stats.signals == 1);

  CHECK_THROWS_AS(rt.call_service("light", "turn_on", door), Error);
  CHECK_THROWS_AS(rt.call_service("climate", "set_setpoint", temp, {{"setpoint", std::string("warm")}}), Error);
  CHECK_THROWS_AS(rt.call_service("lock", "lock", bulb), Error);
  CHECK(stats.state_changes == 3);
}
