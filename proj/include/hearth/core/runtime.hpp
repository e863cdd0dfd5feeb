#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hearth/core/event_bus.hpp"
#include "hearth/core/types.hpp"

namespace hearth {

struct Entity {
  EntityId id;
  DeviceKind kind = DeviceKind::Bulb;
  std::string name;
  StateValue state;
  Payload attributes;
  SimMillis last_changed = 0;
  SimMillis last_updated = 0;
};

/// Binary kinds start off, the temperature sensor starts unavailable.
StateValue initial_state(DeviceKind kind);

/// Read-only access to entity states, for condition evaluation.
class StateView {
 public:
  virtual ~StateView() = default;
  /// nullopt when the entity is unknown.
  virtual std::optional<StateValue> lookup(const EntityId& id) const = 0;
  virtual SimMillis now() const = 0;
};

struct StateChange {
  EntityId id;
  StateValue old_state;
  StateValue new_state;
  SimMillis timestamp = 0;
};

class Runtime;

struct ServiceCall {
  Runtime& runtime;
  const Entity& target;
  const Payload& data;
};

struct ServiceResult {
  bool ok = true;
  std::string message;
};

/// Handlers signal failure by returning ok=false or throwing; call_service
/// converts both into Error{HandlerFailure}.
struct ServiceDescriptor {
  std::string domain;
  std::string name;
  std::function<ServiceResult(ServiceCall&)> handler;
};

/// Per-category publish counters, maintained by the producers themselves.
struct EventCounters {
  std::uint64_t state_changed = 0;
  std::uint64_t service_executed = 0;
  std::uint64_t other = 0;  // published through Runtime::emit
};

/// Entity registry, state machine and service registry around one event bus.
///
/// Single-owner: all mutation happens on the thread that owns the runtime.
class Runtime : public StateView {
 public:
  Runtime() = default;
  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  EventBus& bus() noexcept { return bus_; }
  const EventBus& bus() const noexcept { return bus_; }

  SimMillis now() const override { return now_; }
  /// Moves simulated time forward; throws NonMonotoneTimestamp on regress.
  void advance_to(SimMillis t);

  EntityId register_entity(Entity entity);
  bool contains(const EntityId& id) const { return entities_.count(id) != 0; }
  const Entity& entity(const EntityId& id) const;
  std::vector<Entity> enumerate() const;
  std::size_t entity_count() const noexcept { return entities_.size(); }

  /// Always publishes exactly one state_changed event, even when the value is
  /// unchanged. `t` advances the runtime clock.
  StateChange set_state(const EntityId& id, StateValue value);
  StateChange set_state(const EntityId& id, StateValue value, SimMillis t);
  StateValue get_state(const EntityId& id) const;
  /// Merges into the attribute map without publishing.
  void set_attributes(const EntityId& id, const Payload& attributes);

  std::optional<StateValue> lookup(const EntityId& id) const override;

  void register_service(ServiceDescriptor descriptor);
  std::vector<std::pair<std::string, std::string>> services() const;
  bool has_service(const std::string& domain, const std::string& name) const;
  ServiceResult call_service(const std::string& domain, const std::string& name,
                             const EntityId& target, const Payload& data = {});

  /// Publishes an arbitrary event at the current time (device signals,
  /// injections).
  std::size_t emit(std::string event_type, std::string origin, Payload payload = {});

  const EventCounters& counters() const noexcept { return counters_; }

 private:
  Entity& entity_mut(const EntityId& id);

  EventBus bus_;
  SimMillis now_ = 0;
  std::map<EntityId, Entity> entities_;
  std::map<std::pair<std::string, std::string>, ServiceDescriptor> services_;
  EventCounters counters_;
};

}  // namespace hearth
