#pragma once

#include <json.hpp>

#include "hearth/core/runtime.hpp"
#include "hearth/core/types.hpp"

namespace hearth {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& s);
/// Throws WrongType for arrays/objects/null.
Scalar scalar_from_json(const Json& j);
Json to_json(const Payload& p);
Payload payload_from_json(const Json& j);

/// {"type": "binary"|"numeric"|"unavailable", "value"?, "unit"?}
Json to_json(const StateValue& s);
/// Accepts the object form above or a bare true/false/number/"unavailable".
/// Throws WrongType or TypeMismatch.
StateValue state_from_json(const Json& j);
Json to_json(const Event& e);
/// {entity_id, kind, name, state, attributes, last_changed}
Json to_json(const Entity& e);

}  // namespace hearth
