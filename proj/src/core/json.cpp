#include "hearth/core/json.hpp"

#include "hearth/core/error.hpp"

namespace hearth {

Json to_json(const Scalar& s) {
  return std::visit([](const auto& v) { return Json(v); }, s);
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw Error(ErrorCode::WrongType, "expected a scalar, got " + std::string(j.type_name()));
}

Json to_json(const Payload& p) {
  Json out = Json::object();
  for (const auto& [k, v] : p) out[k] = to_json(v);
  return out;
}

Payload payload_from_json(const Json& j) {
  if (j.is_null()) return {};
  if (!j.is_object()) throw Error(ErrorCode::WrongType, "expected an object");
  Payload out;
  for (const auto& [k, v] : j.items()) out[k] = scalar_from_json(v);
  return out;
}

Json to_json(const StateValue& s) {
  Json out;
  out["type"] = s.type_name();
  if (s.is_binary()) {
    out["value"] = s.as_bool();
  } else if (s.is_numeric()) {
    out["value"] = s.as_double();
    if (s.unit()) out["unit"] = *s.unit();
  }
  return out;
}

StateValue state_from_json(const Json& j) {
  if (j.is_boolean()) return StateValue::binary(j.get<bool>());
  if (j.is_number()) return StateValue::numeric(j.get<double>());
  if (j.is_string() && j.get<std::string>() == "unavailable") return StateValue::unavailable();
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw Error(ErrorCode::WrongType, "expected a state object with a \"type\" field");
  }
  const auto type = j["type"].get<std::string>();
  if (type == "unavailable") return StateValue::unavailable();
  const auto value = j.find("value");
  if (type == "binary" && value != j.end() && value->is_boolean()) return StateValue::binary(value->get<bool>());
  if (type == "numeric" && value != j.end() && value->is_number()) {
    std::optional<std::string> unit;
    if (auto u = j.find("unit"); u != j.end()) {
      if (!u->is_string()) throw Error(ErrorCode::WrongType, "unit must be a string");
      unit = u->get<std::string>();
    }
    return StateValue::numeric(value->get<double>(), unit);
  }
  throw Error(ErrorCode::WrongType, "state of type '" + type + "' needs a matching value");
}

Json to_json(const Event& e) {
  Json out;
  out["event_type"] = e.event_type;
  out["timestamp"] = e.timestamp;
  out["origin"] = e.origin;
  out["payload"] = to_json(e.payload);
  if (e.old_state) out["old_state"] = to_json(*e.old_state);
  if (e.new_state) out["new_state"] = to_json(*e.new_state);
  return out;
}

Json to_json(const Entity& e) {
  Json out;
  out["entity_id"] = e.id.str();
  out["kind"] = to_string(e.kind);
  out["name"] = e.name;
  out["state"] = to_json(e.state);
  out["attributes"] = to_json(e.attributes);
  out["last_changed"] = e.last_changed;
  return out;
}

}  // namespace hearth
