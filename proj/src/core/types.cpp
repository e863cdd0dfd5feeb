#include "hearth/core/types.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "hearth/core/error.hpp"

namespace hearth {

namespace {

bool id_char(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::string scalar_to_string(const Scalar& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return v;
        }
      },
      s);
}

std::optional<double> scalar_as_number(const Scalar& s) {
  if (const auto* i = std::get_if<std::int64_t>(&s)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&s)) return *d;
  return std::nullopt;
}

bool EntityId::is_valid(std::string_view text) noexcept {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == text.size()) return false;
  if (text.find('.', dot + 1) != std::string_view::npos) return false;
  return std::all_of(text.begin(), text.end(), [](char c) { return c == '.' || id_char(c); });
}

EntityId EntityId::parse(std::string_view text) {
  if (!is_valid(text)) {
    throw Error(ErrorCode::MalformedId,
                "entity id '" + std::string(text) +
                    "' must look like <domain>.<object_id> using [a-z0-9_]");
  }
  return EntityId(std::string(text));
}

std::string_view EntityId::domain() const noexcept {
  std::string_view v = value_;
  return v.substr(0, v.find('.'));
}

std::string_view EntityId::object_id() const noexcept {
  std::string_view v = value_;
  const auto dot = v.find('.');
  return dot == std::string_view::npos ? std::string_view{} : v.substr(dot + 1);
}

std::string_view to_string(DeviceKind kind) noexcept {
  switch (kind) {
    case DeviceKind::Bulb: return "bulb";
    case DeviceKind::Spotlight: return "spotlight";
    case DeviceKind::MotionSensor: return "motion_sensor";
    case DeviceKind::Switch: return "switch";
    case DeviceKind::SmokeSensor: return "smoke_sensor";
    case DeviceKind::COSensor: return "co_sensor";
    case DeviceKind::FloodSensor: return "flood_sensor";
    case DeviceKind::PanicButton: return "panic_button";
    case DeviceKind::DoorSensor: return "door_sensor";
    case DeviceKind::Outlet: return "outlet";
    case DeviceKind::TemperatureSensor: return "temperature_sensor";
  }
  return "unknown";
}

std::optional<DeviceKind> parse_device_kind(std::string_view text) noexcept {
  for (auto k : kAllDeviceKinds) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

bool is_binary_kind(DeviceKind kind) noexcept { return kind != DeviceKind::TemperatureSensor; }

bool is_sensor_kind(DeviceKind kind) noexcept {
  switch (kind) {
    case DeviceKind::MotionSensor:
    case DeviceKind::SmokeSensor:
    case DeviceKind::COSensor:
    case DeviceKind::FloodSensor:
    case DeviceKind::DoorSensor:
    case DeviceKind::TemperatureSensor:
      return true;
    default:
      return false;
  }
}

bool is_alarm_kind(DeviceKind kind) noexcept {
  switch (kind) {
    case DeviceKind::SmokeSensor:
    case DeviceKind::COSensor:
    case DeviceKind::FloodSensor:
    case DeviceKind::DoorSensor:
    case DeviceKind::PanicButton:
      return true;
    default:
      return false;
  }
}

StateValue StateValue::numeric(double value, std::optional<std::string> unit) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::TypeMismatch, "numeric state must be finite");
  }
  return StateValue(Numeric{value, std::move(unit)});
}

bool StateValue::as_bool() const {
  if (const auto* b = std::get_if<Binary>(&v_)) return b->on;
  throw Error(ErrorCode::TypeMismatch, "state is " + std::string(type_name()) + ", not binary");
}

double StateValue::as_double() const {
  if (const auto* n = std::get_if<Numeric>(&v_)) return n->value;
  throw Error(ErrorCode::TypeMismatch, "state is " + std::string(type_name()) + ", not numeric");
}

const std::optional<std::string>& StateValue::unit() const {
  static const std::optional<std::string> none;
  if (const auto* n = std::get_if<Numeric>(&v_)) return n->unit;
  return none;
}

std::string StateValue::to_string() const {
  if (const auto* b = std::get_if<Binary>(&v_)) return b->on ? "on" : "off";
  if (const auto* n = std::get_if<Numeric>(&v_)) {
    std::string out = format_double(n->value);
    if (n->unit) out += " " + *n->unit;
    return out;
  }
  return "unavailable";
}

std::string_view StateValue::type_name() const noexcept {
  if (is_binary()) return "binary";
  if (is_numeric()) return "numeric";
  return "unavailable";
}

std::string_view to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::LightingTemperature: return "lighting_temperature";
    case ScenarioKind::ManualTesting: return "manual_testing";
    case ScenarioKind::MorningScene: return "morning_scene";
    case ScenarioKind::EveningScene: return "evening_scene";
    case ScenarioKind::ComplexRoom: return "complex_room";
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view text) noexcept {
  for (auto k : kAllScenarios) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

bool is_valid_tier(int interval_s) noexcept {
  return std::find(kTiers.begin(), kTiers.end(), interval_s) != kTiers.end();
}

std::string tier_set_string() {
  std::string out = "{";
  for (std::size_t i = 0; i < kTiers.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(kTiers[i]);
  }
  return out + "}";
}

void require_tier(int interval_s) {
  if (!is_valid_tier(interval_s)) {
    throw Error(ErrorCode::InvalidTier, "interval_s " + std::to_string(interval_s) +
                                            " not in allowed set " + tier_set_string());
  }
}

}  // namespace hearth
