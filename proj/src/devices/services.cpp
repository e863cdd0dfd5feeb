#include "hearth/devices/services.hpp"

#include <cmath>

#include "hearth/core/error.hpp"

namespace hearth::devices {

namespace {

ServiceResult wrong_kind(const ServiceCall& c, const char* wanted) {
  return {false, "'" + c.target.id.str() + "' is a " + std::string(to_string(c.target.kind)) +
                     ", expected " + wanted};
}

bool is_light(DeviceKind k) { return k == DeviceKind::Bulb || k == DeviceKind::Spotlight; }
bool is_switch(DeviceKind k) { return k == DeviceKind::Switch || k == DeviceKind::Outlet; }

enum class Power { On, Off, Toggle };

ServiceDescriptor power_service(const std::string& domain, const std::string& name, Power p,
                                bool (*accepts)(DeviceKind), const char* wanted, ServiceStats* stats) {
  return {domain, name, [p, accepts, wanted, stats](ServiceCall& c) {
            if (!accepts(c.target.kind)) return wrong_kind(c, wanted);
            const bool on = p == Power::On ? true : p == Power::Off ? false : !c.target.state.as_bool();
            const EntityId id = c.target.id;
            if (!c.data.empty()) c.runtime.set_attributes(id, c.data);
            c.runtime.set_state(id, StateValue::binary(on));
            if (stats) ++stats->state_changes;
            return ServiceResult{true, on ? "on" : "off"};
          }};
}

}  // namespace

void register_builtin_services(Runtime& rt, ServiceStats* stats) {
  for (const auto& [domain, accepts, wanted] :
       {std::tuple{"light", &is_light, "a bulb or spotlight"}, std::tuple{"switch", &is_switch, "a switch or outlet"}}) {
    rt.register_service(power_service(domain, "turn_on", Power::On, accepts, wanted, stats));
    rt.register_service(power_service(domain, "turn_off", Power::Off, accepts, wanted, stats));
    rt.register_service(power_service(domain, "toggle", Power::Toggle, accepts, wanted, stats));
  }

  rt.register_service({"climate", "set_setpoint", [](ServiceCall& c) {
                         if (c.target.kind != DeviceKind::TemperatureSensor) return wrong_kind(c, "a temperature sensor");
                         auto it = c.data.find("setpoint");
                         const auto value = it == c.data.end() ? std::nullopt : scalar_as_number(it->second);
                         if (!value || !std::isfinite(*value)) return ServiceResult{false, "setpoint must be a number"};
                         c.runtime.set_attributes(c.target.id, {{"setpoint", *value}});
                         return ServiceResult{true, "setpoint " + scalar_to_string(*value)};
                       }});

  for (const bool locked : {true, false}) {
    rt.register_service({"lock", locked ? "lock" : "unlock", [locked](ServiceCall& c) {
                           if (c.target.kind != DeviceKind::DoorSensor) return wrong_kind(c, "a door sensor");
                           c.runtime.set_attributes(c.target.id, {{"locked", locked}});
                           return ServiceResult{true, locked ? "locked" : "unlocked"};
                         }});
  }

  rt.register_service({"button", "press", [stats](ServiceCall& c) {
                         if (c.target.kind != DeviceKind::PanicButton) return wrong_kind(c, "a panic button");
                         c.runtime.emit(std::string(event_types::kPanicPressed), c.target.id.str());
                         if (stats) ++stats->signals;
                         return ServiceResult{true, "pressed"};
                       }});
}

}  // namespace hearth::devices
