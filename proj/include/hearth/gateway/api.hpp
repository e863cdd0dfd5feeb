#pragma once

#include <string>

#include "hearth/core/error.hpp"
#include "hearth/gateway/executor.hpp"

namespace hearth::gateway {

struct Request {
  std::string method;  // "GET", "POST", ...
  std::string target;  // path, optionally with a query string
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;  // JSON, empty for 204
};

/// status is 400, 404, 409 or 500; code is a machine string such as
/// "unknown_entity".
struct ApiError {
  int status = 500;
  std::string code;
  std::string message;
  Json to_json() const;
};

ApiError api_error(const Error& e);

/// Routes REST requests onto the world. Reads come from the latest
/// snapshot, mutations run on the world thread and return its reply.
///
///   GET  /api/states                          all entities
///   GET  /api/states/{entity_id}
///   GET  /api/scenes, /api/automations        listings for clients
///   GET  /api/clock                           {now, speed}
///   GET  /api/memstore/metrics
///   POST /api/services/{domain}/{service}     {entity_id, data?}
///   POST /api/scenes/{id}/activate
///   POST /api/automations/{id}/trigger        {skip_conditions?}
///   POST /api/clock/advance                   {ms}
///   POST /api/inject                          {event_type, origin?, new_state?, payload?}
class Api {
 public:
  explicit Api(WorldExecutor& executor) : executor_(executor) {}
  Response handle(const Request& request) const;

 private:
  WorldExecutor& executor_;
};

}  // namespace hearth::gateway
