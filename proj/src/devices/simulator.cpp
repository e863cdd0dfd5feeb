#include "hearth/devices/simulator.hpp"

#include <algorithm>

#include "hearth/core/error.hpp"

namespace hearth::devices {

void VirtualClock::set_speed(double speed) {
  if (!(speed >= 0.0)) throw Error(ErrorCode::InvalidArgument, "clock speed must be >= 0");
  speed_ = speed;
}

void VirtualClock::advance(SimMillis dt) {
  if (dt < 0) throw Error(ErrorCode::InvalidArgument, "cannot advance the clock by a negative step");
  now_ += dt;
}

Simulator::Simulator(Runtime& runtime, std::vector<DeviceSim> devices, std::uint64_t seed,
                     ScenarioScript script, bool noise)
    : runtime_(runtime), devices_(std::move(devices)), seed_(seed), script_(std::move(script)), noise_(noise) {
  std::sort(devices_.begin(), devices_.end(),
            [](const DeviceSim& a, const DeviceSim& b) { return a.entity < b.entity; });
  for (const auto& d : devices_) {
    if (d.cadence_s && !is_valid_tier(*d.cadence_s)) {
      throw Error(ErrorCode::InvalidTier, "cadence of '" + d.entity.str() + "' must be one of " + tier_set_string());
    }
  }
  std::stable_sort(script_.timeline.begin(), script_.timeline.end(),
                   [](const ScriptStep& a, const ScriptStep& b) { return a.at_ms < b.at_ms; });
}

std::optional<SimMillis> Simulator::next_due(SimMillis after) const {
  std::optional<SimMillis> best;
  for (const auto& d : devices_) {
    if (!d.cadence_s) continue;
    const SimMillis period = static_cast<SimMillis>(*d.cadence_s) * kMillisPerSecond;
    const SimMillis t = (after < 0 ? 1 : after / period + 1) * period;
    if (!best || t < *best) best = t;
  }
  for (std::size_t i = next_step_; i < script_.timeline.size(); ++i) {
    if (script_.timeline[i].at_ms > after) {
      if (!best || script_.timeline[i].at_ms < *best) best = script_.timeline[i].at_ms;
      break;
    }
  }
  return best;
}

StateValue Simulator::sample(const DeviceSim& d, SimMillis t) const {
  switch (d.kind) {
    case DeviceKind::TemperatureSensor:
      return StateValue::numeric(temperature_at(static_cast<double>(t) / 1000.0, seed_, noise_), "°C");
    case DeviceKind::MotionSensor:
      return StateValue::binary(motion_at(t, seed_));
    default:
      // door and alarm sensors re-report whatever they currently hold
      return runtime_.get_state(d.entity);
  }
}

Event Simulator::apply_step(const ScriptStep& step) {
  Event e;
  if (step.state) {
    const auto change = runtime_.set_state(*step.entity, *step.state);
    ++injected_states_;
    e.event_type = std::string(event_types::kStateChanged);
    e.timestamp = change.timestamp;
    e.origin = step.entity->str();
    e.old_state = change.old_state;
    e.new_state = change.new_state;
  } else {
    e.event_type = *step.event;
    e.timestamp = runtime_.now();
    e.origin = step.entity ? step.entity->str() : "system";
    runtime_.emit(e.event_type, e.origin);
  }
  ++injections_;
  return e;
}

std::vector<Event> Simulator::emit_due(SimMillis t) {
  runtime_.advance_to(t);
  std::vector<Event> out;
  for (const auto& d : devices_) {
    if (!d.cadence_s || t <= 0) continue;
    if (t % (static_cast<SimMillis>(*d.cadence_s) * kMillisPerSecond) != 0) continue;
    if (!runtime_.contains(d.entity)) continue;
    const auto change = runtime_.set_state(d.entity, sample(d, t), t);
    ++emissions_;
    Event e;
    e.event_type = std::string(event_types::kStateChanged);
    e.timestamp = t;
    e.origin = d.entity.str();
    e.old_state = change.old_state;
    e.new_state = change.new_state;
    out.push_back(std::move(e));
  }
  while (next_step_ < script_.timeline.size() && script_.timeline[next_step_].at_ms <= t) {
    const auto& step = script_.timeline[next_step_++];
    if (step.at_ms < t) continue;  // skipped past (clock started later)
    out.push_back(apply_step(step));
  }
  return out;
}

std::vector<Event> Simulator::tick(VirtualClock& clock, SimMillis dt) {
  const SimMillis start = clock.now();
  clock.advance(dt);
  std::vector<Event> out;
  SimMillis cursor = start;
  while (auto t = next_due(cursor)) {
    if (*t > clock.now()) break;
    auto batch = emit_due(*t);
    out.insert(out.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
    cursor = *t;
  }
  runtime_.advance_to(clock.now());
  return out;
}

void Simulator::inject(const Event& event) {
  if (event.event_type == event_types::kStateChanged && event.new_state && EntityId::is_valid(event.origin)) {
    runtime_.set_state(EntityId::parse(event.origin), *event.new_state);
    ++injected_states_;
  } else {
    runtime_.emit(event.event_type, event.origin, event.payload);
  }
  ++injections_;
}

}  // namespace hearth::devices
