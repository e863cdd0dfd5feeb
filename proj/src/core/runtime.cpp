#include "hearth/core/runtime.hpp"

#include "hearth/core/error.hpp"

namespace hearth {

StateValue initial_state(DeviceKind kind) {
  return is_binary_kind(kind) ? StateValue::binary(false) : StateValue::unavailable();
}

void Runtime::advance_to(SimMillis t) {
  if (t < now_) {
    throw Error(ErrorCode::NonMonotoneTimestamp,
                "clock cannot move from " + std::to_string(now_) + " to " + std::to_string(t));
  }
  now_ = t;
}

EntityId Runtime::register_entity(Entity entity) {
  if (!EntityId::is_valid(entity.id.str())) {
    throw Error(ErrorCode::MalformedId, "entity id '" + entity.id.str() + "' is malformed");
  }
  if (entities_.count(entity.id) != 0) {
    throw Error(ErrorCode::DuplicateId, "entity '" + entity.id.str() + "' already registered");
  }
  if (entity.state.is_numeric() && is_binary_kind(entity.kind)) {
    throw Error(ErrorCode::TypeMismatch, "binary entity '" + entity.id.str() + "' given numeric state");
  }
  if (entity.state.is_binary() && !is_binary_kind(entity.kind)) {
    throw Error(ErrorCode::TypeMismatch, "numeric entity '" + entity.id.str() + "' given binary state");
  }
  entity.last_changed = entity.last_updated = now_;
  auto id = entity.id;
  entities_.emplace(id, std::move(entity));
  return id;
}

const Entity& Runtime::entity(const EntityId& id) const {
  auto it = entities_.find(id);
  if (it == entities_.end()) {
    throw Error(ErrorCode::UnknownEntity, "no entity '" + id.str() + "'");
  }
  return it->second;
}

Entity& Runtime::entity_mut(const EntityId& id) {
  return const_cast<Entity&>(std::as_const(*this).entity(id));
}

std::vector<Entity> Runtime::enumerate() const {
  std::vector<Entity> out;
  out.reserve(entities_.size());
  for (const auto& [id, e] : entities_) out.push_back(e);
  return out;
}

StateChange Runtime::set_state(const EntityId& id, StateValue value) {
  return set_state(id, std::move(value), now_);
}

StateChange Runtime::set_state(const EntityId& id, StateValue value, SimMillis t) {
  Entity& e = entity_mut(id);
  if (value.is_numeric() && is_binary_kind(e.kind)) {
    throw Error(ErrorCode::TypeMismatch,
                "'" + id.str() + "' is " + std::string(to_string(e.kind)) + " and takes binary states");
  }
  if (value.is_binary() && !is_binary_kind(e.kind)) {
    throw Error(ErrorCode::TypeMismatch,
                "'" + id.str() + "' is " + std::string(to_string(e.kind)) + " and takes numeric states");
  }
  advance_to(t);

  StateChange change{id, e.state, value, t};
  if (!(e.state == value)) e.last_changed = t;
  e.last_updated = t;
  e.state = value;

  Event ev;
  ev.event_type = std::string(event_types::kStateChanged);
  ev.timestamp = t;
  ev.origin = id.str();
  ev.old_state = change.old_state;
  ev.new_state = change.new_state;
  ++counters_.state_changed;
  bus_.publish(std::move(ev));
  return change;
}

StateValue Runtime::get_state(const EntityId& id) const { return entity(id).state; }

void Runtime::set_attributes(const EntityId& id, const Payload& attributes) {
  Entity& e = entity_mut(id);
  for (const auto& [k, v] : attributes) e.attributes[k] = v;
}

std::optional<StateValue> Runtime::lookup(const EntityId& id) const {
  auto it = entities_.find(id);
  if (it == entities_.end()) return std::nullopt;
  return it->second.state;
}

void Runtime::register_service(ServiceDescriptor descriptor) {
  auto key = std::make_pair(descriptor.domain, descriptor.name);
  if (services_.count(key) != 0) {
    throw Error(ErrorCode::DuplicateService,
                "service " + descriptor.domain + "." + descriptor.name + " already registered");
  }
  services_.emplace(std::move(key), std::move(descriptor));
}

std::vector<std::pair<std::string, std::string>> Runtime::services() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [key, _] : services_) out.push_back(key);
  return out;
}

bool Runtime::has_service(const std::string& domain, const std::string& name) const {
  return services_.count({domain, name}) != 0;
}

ServiceResult Runtime::call_service(const std::string& domain, const std::string& name,
                                    const EntityId& target, const Payload& data) {
  auto it = services_.find({domain, name});
  if (it == services_.end()) {
    throw Error(ErrorCode::UnknownService, "no service " + domain + "." + name);
  }
  const Entity& e = entity(target);

  ServiceCall call{*this, e, data};
  ServiceResult result;
  try {
    result = it->second.handler(call);
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::HandlerFailure, domain + "." + name + ": " + ex.what());
  }
  if (!result.ok) {
    throw Error(ErrorCode::HandlerFailure, domain + "." + name + ": " + result.message);
  }

  Event ev;
  ev.event_type = std::string(event_types::kServiceExecuted);
  ev.timestamp = now_;
  ev.origin = "system";
  ev.payload = {{"domain", domain}, {"service", name}, {"target", target.str()}};
  ++counters_.service_executed;
  bus_.publish(std::move(ev));
  return result;
}

std::size_t Runtime::emit(std::string event_type, std::string origin, Payload payload) {
  Event ev;
  ev.event_type = std::move(event_type);
  ev.timestamp = now_;
  ev.origin = std::move(origin);
  ev.payload = std::move(payload);
  ++counters_.other;
  return bus_.publish(std::move(ev));
}

}  // namespace hearth
