#include "hearth/gateway/api.hpp"

#include <vector>

namespace hearth::gateway {

namespace {

using automation::ActionResult;

Response json_response(int status, const Json& body) { return {status, body.dump()}; }

Response error_response(const ApiError& e) { return json_response(e.status, e.to_json()); }

Response fail(int status, std::string code, std::string message) {
  return error_response({status, std::move(code), std::move(message)});
}

std::vector<std::string> split_path(std::string_view target) {
  if (auto q = target.find('?'); q != std::string_view::npos) target = target.substr(0, q);
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos < target.size()) {
    const auto next = target.find('/', pos);
    const auto end = next == std::string_view::npos ? target.size() : next;
    if (end > pos) parts.emplace_back(target.substr(pos, end - pos));
    pos = end + 1;
  }
  return parts;
}

/// Empty body reads as {}.
Json body_object(const std::string& body) {
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) return Json::object();
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded()) throw ApiError{400, "malformed_body", "request body is not valid JSON"};
  if (!j.is_object()) throw ApiError{400, "malformed_body", "request body must be a JSON object"};
  return j;
}

Json results_json(const std::vector<ActionResult>& results) {
  Json out = Json::array();
  for (const auto& r : results) {
    Json j;
    j["action"] = r.action;
    j["ok"] = r.ok;
    if (!r.ok) j["error"] = r.error;
    out.push_back(std::move(j));
  }
  return out;
}

Json to_json(const automation::FireOutcome& o) {
  Json j;
  j["automation_id"] = o.automation_id;
  j["status"] = o.status == automation::FireStatus::Executed ? "executed" : "skipped";
  j["results"] = results_json(o.results);
  j["errors"] = o.error_count();
  return j;
}

Json to_json(const automation::SceneOutcome& o) {
  Json j;
  j["scene_id"] = o.scene_id;
  j["results"] = results_json(o.results);
  j["errors"] = o.error_count();
  return j;
}

EntityId entity_or_404(const std::string& text) {
  if (!EntityId::is_valid(text)) throw ApiError{404, "unknown_entity", "no entity '" + text + "'"};
  return EntityId::parse(text);
}

}  // namespace

Json ApiError::to_json() const {
  Json j;
  j["status"] = status;
  j["code"] = code;
  j["message"] = message;
  return j;
}

ApiError api_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnknownEntity:
      return {404, "unknown_entity", e.what()};
    case ErrorCode::UnknownService:
      return {404, "unknown_service", e.what()};
    case ErrorCode::UnknownScene:
      return {404, "unknown_scene", e.what()};
    case ErrorCode::UnknownAutomation:
      return {404, "unknown_automation", e.what()};
    case ErrorCode::Disabled:
      return {409, "automation_disabled", e.what()};
    case ErrorCode::MalformedId:
      return {400, "malformed_id", e.what()};
    case ErrorCode::TypeMismatch:
      return {400, "type_mismatch", e.what()};
    case ErrorCode::WrongType:
      return {400, "malformed_body", e.what()};
    case ErrorCode::InvalidArgument:
      return {400, "invalid_argument", e.what()};
    case ErrorCode::HandlerFailure:
      return {400, "service_failed", e.what()};
    default:
      return {500, "internal", e.what()};
  }
}

Response Api::handle(const Request& req) const {
  const auto path = split_path(req.target);
  const auto n = path.size();
  const bool get = req.method == "GET";
  const bool post = req.method == "POST";
  try {
    if (n < 2 || path[0] != "api") return fail(404, "not_found", "no route " + req.method + " " + req.target);
    const auto& section = path[1];

    if (section == "states" && get && n == 2) return json_response(200, executor_.snapshot()->states);
    if (section == "states" && get && n == 3) {
      const auto snap = executor_.snapshot();
      for (const auto& e : snap->states)
        if (e["entity_id"] == path[2]) return json_response(200, e);
      return fail(404, "unknown_entity", "no entity '" + path[2] + "'");
    }

    if (section == "memstore" && get && n == 3 && path[2] == "metrics") {
      return json_response(200, executor_.snapshot()->metrics);
    }

    if (section == "clock" && get && n == 2) {
      const auto snap = executor_.snapshot();
      return json_response(200, Json{{"now", snap->now}, {"speed", snap->speed}});
    }

    if (section == "services" && post && n == 4) {
      const auto body = body_object(req.body);
      const auto it = body.find("entity_id");
      if (it == body.end() || !it->is_string()) {
        return fail(400, "malformed_body", "body needs a string entity_id");
      }
      const auto target = entity_or_404(it->get<std::string>());
      const Payload data = body.contains("data") ? payload_from_json(body["data"]) : Payload{};
      const auto& domain = path[2];
      const auto& service = path[3];
      const auto result = executor_
                              .submit([&](harness::World& w) {
                                auto& rt = w.runtime();
                                if (!rt.has_service(domain, service)) {
                                  throw ApiError{404, "unknown_service", "no service " + domain + "." + service};
                                }
                                if (!rt.contains(target)) {
                                  throw ApiError{404, "unknown_entity", "no entity '" + target.str() + "'"};
                                }
                                return rt.call_service(domain, service, target, data);
                              })
                              .get();
      return json_response(200, Json{{"ok", result.ok}, {"message", result.message}});
    }

    if (section == "scenes" && get && n == 2) {
      auto listing = executor_
                         .submit([](harness::World& w) {
                           Json out = Json::array();
                           for (const auto& id : w.engine().scene_ids()) {
                             const auto& s = w.engine().scene(id);
                             out.push_back({{"id", s.id}, {"name", s.name}, {"targets", s.targets.size()}});
                           }
                           return out;
                         })
                         .get();
      return json_response(200, listing);
    }
    if (section == "scenes" && post && n == 4 && path[3] == "activate") {
      const auto outcome =
          executor_.submit([&](harness::World& w) { return w.engine().activate_scene(path[2]); }).get();
      return json_response(200, to_json(outcome));
    }

    if (section == "automations" && get && n == 2) {
      auto listing = executor_
                         .submit([](harness::World& w) {
                           Json out = Json::array();
                           for (const auto& id : w.engine().automation_ids()) {
                             const auto& a = w.engine().automation(id);
                             out.push_back({{"id", a.id},
                                            {"scenario", std::string(to_string(a.scenario))},
                                            {"enabled", a.enabled}});
                           }
                           return out;
                         })
                         .get();
      return json_response(200, listing);
    }
    if (section == "automations" && post && n == 4 && path[3] == "trigger") {
      const auto body = body_object(req.body);
      bool skip = false;
      if (auto it = body.find("skip_conditions"); it != body.end()) {
        if (!it->is_boolean()) return fail(400, "malformed_body", "skip_conditions must be a boolean");
        skip = it->get<bool>();
      }
      const auto outcome =
          executor_.submit([&](harness::World& w) { return w.engine().manual_trigger(path[2], skip); }).get();
      return json_response(200, to_json(outcome));
    }

    if (section == "clock" && post && n == 3 && path[2] == "advance") {
      const auto body = body_object(req.body);
      const auto it = body.find("ms");
      if (it == body.end() || !it->is_number_integer() || it->get<std::int64_t>() < 0) {
        return fail(400, "malformed_body", "body needs a non-negative integer ms");
      }
      const auto ms = it->get<SimMillis>();
      const auto now = executor_
                           .submit([ms](harness::World& w) {
                             w.advance(ms);
                             return w.now();
                           })
                           .get();
      return json_response(200, Json{{"now", now}});
    }

    if (section == "inject" && post && n == 2) {
      const auto body = body_object(req.body);
      const auto type = body.find("event_type");
      if (type == body.end() || !type->is_string() || type->get<std::string>().empty()) {
        return fail(400, "malformed_body", "body needs a non-empty event_type");
      }
      Event e;
      e.event_type = type->get<std::string>();
      if (auto o = body.find("origin"); o != body.end()) {
        if (!o->is_string()) return fail(400, "malformed_body", "origin must be a string");
        e.origin = o->get<std::string>();
      }
      if (body.contains("payload")) e.payload = payload_from_json(body["payload"]);
      if (body.contains("new_state")) {
        if (e.event_type != event_types::kStateChanged) {
          return fail(400, "malformed_body", "new_state is only valid for state_changed");
        }
        e.new_state = state_from_json(body["new_state"]);
        entity_or_404(e.origin);
      }
      const auto now = executor_
                           .submit([&](harness::World& w) {
                             if (e.new_state) {
                               const auto id = EntityId::parse(e.origin);
                               const auto& ent = w.runtime().entity(id);  // UnknownEntity
                               if (is_binary_kind(ent.kind) != e.new_state->is_binary() &&
                                   !e.new_state->is_unavailable()) {
                                 throw Error(ErrorCode::TypeMismatch,
                                             "state " + e.new_state->to_string() + " does not fit '" + e.origin + "'");
                               }
                             }
                             w.simulator().inject(e);
                             return w.now();
                           })
                           .get();
      return json_response(200, Json{{"ok", true}, {"now", now}});
    }

    return fail(404, "not_found", "no route " + req.method + " " + req.target);
  } catch (const ApiError& e) {
    return error_response(e);
  } catch (const Error& e) {
    return error_response(api_error(e));
  } catch (const std::exception& e) {
    return fail(500, "internal", e.what());
  }
}

}  // namespace hearth::gateway
