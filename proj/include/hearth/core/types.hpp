#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace hearth {

/// Simulated milliseconds since the scenario epoch (00:00 of day one).
using SimMillis = std::int64_t;

inline constexpr SimMillis kMillisPerSecond = 1000;
inline constexpr SimMillis kMillisPerDay = 86'400'000;

using Scalar = std::variant<bool, std::int64_t, double, std::string>;
using Payload = std::map<std::string, Scalar>;

std::string scalar_to_string(const Scalar& s);
std::optional<double> scalar_as_number(const Scalar& s);

/// "<domain>.<object_id>", lowercase ASCII letters, digits and underscores.
class EntityId {
 public:
  EntityId() = default;

  /// Throws Error{MalformedId}.
  static EntityId parse(std::string_view text);
  static bool is_valid(std::string_view text) noexcept;

  const std::string& str() const noexcept { return value_; }
  std::string_view domain() const noexcept;
  std::string_view object_id() const noexcept;
  bool empty() const noexcept { return value_.empty(); }

  auto operator<=>(const EntityId&) const = default;
  bool operator==(const EntityId&) const = default;

 private:
  explicit EntityId(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

enum class DeviceKind : std::uint8_t {
  Bulb,
  Spotlight,
  MotionSensor,
  Switch,
  SmokeSensor,
  COSensor,
  FloodSensor,
  PanicButton,
  DoorSensor,
  Outlet,
  TemperatureSensor,
};

inline constexpr std::array<DeviceKind, 11> kAllDeviceKinds = {
    DeviceKind::Bulb,        DeviceKind::Spotlight,   DeviceKind::MotionSensor,
    DeviceKind::Switch,      DeviceKind::SmokeSensor, DeviceKind::COSensor,
    DeviceKind::FloodSensor, DeviceKind::PanicButton, DeviceKind::DoorSensor,
    DeviceKind::Outlet,      DeviceKind::TemperatureSensor,
};

std::string_view to_string(DeviceKind kind) noexcept;
std::optional<DeviceKind> parse_device_kind(std::string_view text) noexcept;
bool is_binary_kind(DeviceKind kind) noexcept;
bool is_sensor_kind(DeviceKind kind) noexcept;
/// Door, smoke, CO, flood and panic.
bool is_alarm_kind(DeviceKind kind) noexcept;

struct Unavailable {
  bool operator==(const Unavailable&) const = default;
};
struct Binary {
  bool on = false;
  bool operator==(const Binary&) const = default;
};
struct Numeric {
  double value = 0.0;
  std::optional<std::string> unit;
  bool operator==(const Numeric&) const = default;
};

/// Binary, numeric or unavailable entity state. Numeric values are always
/// finite; the factory rejects NaN and infinities with Error{TypeMismatch}.
class StateValue {
 public:
  StateValue() = default;
  static StateValue binary(bool on) { return StateValue(Binary{on}); }
  static StateValue numeric(double value, std::optional<std::string> unit = std::nullopt);
  static StateValue unavailable() { return StateValue(); }

  bool is_binary() const noexcept { return std::holds_alternative<Binary>(v_); }
  bool is_numeric() const noexcept { return std::holds_alternative<Numeric>(v_); }
  bool is_unavailable() const noexcept { return std::holds_alternative<Unavailable>(v_); }

  bool as_bool() const;     // throws TypeMismatch unless binary
  double as_double() const; // throws TypeMismatch unless numeric
  const std::optional<std::string>& unit() const;

  /// "on"/"off", the numeric value (plus unit) or "unavailable".
  std::string to_string() const;
  std::string_view type_name() const noexcept;

  const std::variant<Unavailable, Binary, Numeric>& variant() const noexcept { return v_; }

  bool operator==(const StateValue&) const = default;

 private:
  explicit StateValue(Binary b) : v_(b) {}
  explicit StateValue(Numeric n) : v_(std::move(n)) {}
  std::variant<Unavailable, Binary, Numeric> v_;
};

/// Typed, timestamped message on the bus. `origin` is an entity id or "system".
struct Event {
  std::string event_type;
  SimMillis timestamp = 0;
  std::string origin = "system";
  Payload payload;
  std::optional<StateValue> old_state;  // state_changed only
  std::optional<StateValue> new_state;  // state_changed only

  bool operator==(const Event&) const = default;
};

namespace event_types {
inline constexpr std::string_view kStateChanged = "state_changed";
inline constexpr std::string_view kServiceExecuted = "service_executed";
inline constexpr std::string_view kAutomationFired = "automation_fired";
inline constexpr std::string_view kPanicPressed = "panic_pressed";
inline constexpr std::string_view kAll = "*";
}  // namespace event_types

/// The five tested automation scenarios; each row of the strategy table.
enum class ScenarioKind : std::uint8_t {
  LightingTemperature,
  ManualTesting,
  MorningScene,
  EveningScene,
  ComplexRoom,
};

inline constexpr std::array<ScenarioKind, 5> kAllScenarios = {
    ScenarioKind::LightingTemperature, ScenarioKind::ManualTesting, ScenarioKind::MorningScene,
    ScenarioKind::EveningScene, ScenarioKind::ComplexRoom};

std::string_view to_string(ScenarioKind kind) noexcept;
std::optional<ScenarioKind> parse_scenario_kind(std::string_view text) noexcept;

/// Measurement interval tiers, seconds.
inline constexpr std::array<int, 5> kTiers = {15, 30, 60, 120, 300};
bool is_valid_tier(int interval_s) noexcept;
/// Throws Error{InvalidTier} naming the allowed set.
void require_tier(int interval_s);
std::string tier_set_string();

}  // namespace hearth
