#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "hearth/config/config.hpp"
#include "hearth/core/error.hpp"
#include "hearth/harness/sample_config.hpp"
#include "properties.hpp"

using namespace hearth;
using namespace hearth::config;

namespace {

Error error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected hearth::Error");
  return Error(ErrorCode::InvalidArgument, "unreachable");
}

Error parse_error(const std::string& text) {
  return error_of([&] { (void)parse(text); });
}

Error validate_error(const std::string& text) {
  return error_of([&] { (void)validate(parse(text)); });
}

const char* kOneBulb = R"(entities:
  - id: light.bulb_1
    kind: bulb
    name: Bulb 1
)";

}  // namespace

TEST_CASE("a document with one bulb parses to one entity and no scenes") {
  const auto doc = parse(kOneBulb);
  REQUIRE(doc.entities.size() == 1);
  CHECK(doc.entities[0].id.str() == "light.bulb_1");
  CHECK(doc.entities[0].kind == DeviceKind::Bulb);
  CHECK(doc.entities[0].name == "Bulb 1");
  CHECK_FALSE(doc.entities[0].initial);
  CHECK(doc.scenes.empty());
  CHECK(doc.stores.empty());
  CHECK(doc.automations.empty());
  CHECK_NOTHROW(validate(doc));
}

TEST_CASE("misindented document is a syntax error with a line number") {
  const auto e = parse_error("entities:\n  - id: light.a\n    kind: bulb\n   name: x\n");
  CHECK(e.code() == ErrorCode::SyntaxError);
  REQUIRE(e.where());
  REQUIRE(e.where()->line);
  CHECK(*e.where()->line == 4);
}

TEST_CASE("unknown device kind names the field and the choices") {
  const auto e = parse_error("entities:\n  - id: light.a\n    kind: toaster\n    name: x\n");
  CHECK(e.code() == ErrorCode::WrongType);
  REQUIRE(e.where());
  CHECK(e.where()->path == "entities[0].kind");
  CHECK(e.where()->line == 3);
  CHECK(std::string(e.what()).find("toaster") != std::string::npos);
  CHECK(std::string(e.what()).find("temperature_sensor") != std::string::npos);
}

TEST_CASE("parse rejects unknown keys, missing keys, wrong types and bad ids") {
  SECTION("unknown top-level key") {
    const auto e = parse_error("entities: []\ngadgets: []\n");
    CHECK(e.code() == ErrorCode::UnknownKey);
    CHECK(e.where()->path == "gadgets");
    CHECK(e.where()->line == 2);
  }
  SECTION("unknown entity key") {
    const auto e = parse_error("entities:\n  - id: light.a\n    kind: bulb\n    name: x\n    colour: red\n");
    CHECK(e.code() == ErrorCode::UnknownKey);
    CHECK(e.where()->path == "entities[0].colour");
  }
  SECTION("missing kind") {
    const auto e = parse_error("entities:\n  - id: light.a\n    name: x\n");
    CHECK(e.code() == ErrorCode::MissingKey);
    CHECK(e.where()->path == "entities[0].kind");
  }
  SECTION("interval as text") {
    const auto e = parse_error(
        "stores:\n  - id: s\n    entity: light.a\n    scenario: complex_room\n    interval_s: fast\n");
    CHECK(e.code() == ErrorCode::WrongType);
    CHECK(e.where()->path == "stores[0].interval_s");
  }
  SECTION("quoted number is not an integer") {
    const auto e = parse_error(
        "stores:\n  - id: s\n    entity: light.a\n    scenario: complex_room\n    interval_s: \"15\"\n");
    CHECK(e.code() == ErrorCode::WrongType);
  }
  SECTION("entities must be a list") {
    CHECK(parse_error("entities: {a: 1}\n").code() == ErrorCode::WrongType);
  }
  SECTION("malformed entity id") {
    const auto e = parse_error("entities:\n  - id: Light.A\n    kind: bulb\n    name: x\n");
    CHECK(e.code() == ErrorCode::MalformedId);
    CHECK(e.where()->path == "entities[0].id");
  }
  SECTION("unknown scenario") {
    const auto e = parse_error("stores:\n  - id: s\n    entity: light.a\n    scenario: party\n    interval_s: 15\n");
    CHECK(e.code() == ErrorCode::WrongType);
    CHECK(std::string(e.what()).find("lighting_temperature") != std::string::npos);
  }
  SECTION("trigger with two kinds") {
    const auto e = parse_error(
        "automations:\n  - id: a\n    triggers:\n      - event: {type: x}\n        time: {at: \"07:00:00\"}\n"
        "    actions:\n      - scene: s\n");
    CHECK(e.code() == ErrorCode::WrongType);
  }
  SECTION("bad time of day") {
    const auto e = parse_error(
        "automations:\n  - id: a\n    triggers:\n      - time: {at: \"25:00:00\"}\n    actions:\n      - scene: s\n");
    CHECK(e.code() == ErrorCode::WrongType);
    CHECK(e.where()->path == "automations[0].triggers[0].time.at");
  }
  SECTION("unit without a numeric initial state") {
    const auto e = parse_error("entities:\n  - id: light.a\n    kind: bulb\n    name: x\n    unit: lm\n");
    CHECK(e.code() == ErrorCode::WrongType);
  }
}

TEST_CASE("scene targeting an unregistered entity is a dangling reference") {
  const auto e = validate_error(std::string(kOneBulb) +
                                "scenes:\n  - id: s\n    name: S\n    targets:\n      - entity: light.ghost\n"
                                "        state: true\n");
  CHECK(e.code() == ErrorCode::DanglingReference);
  CHECK(e.where()->path == "scenes[0].targets[0].entity");
  CHECK(e.where()->line == 9);
  CHECK(std::string(e.what()).find("light.ghost") != std::string::npos);
  CHECK(std::string(e.what()).find("scene 's'") != std::string::npos);
}

TEST_CASE("store with interval 45 is an invalid tier naming the allowed set") {
  const auto e = validate_error(std::string(kOneBulb) +
                                "stores:\n  - id: s\n    entity: light.bulb_1\n    scenario: complex_room\n"
                                "    interval_s: 45\n");
  CHECK(e.code() == ErrorCode::InvalidTier);
  CHECK(e.where()->path == "stores[0].interval_s");
  CHECK(std::string(e.what()).find("{15,30,60,120,300}") != std::string::npos);
}

TEST_CASE("duplicate automation id is rejected") {
  const std::string a = "  - id: twice\n    triggers:\n      - event: {type: x}\n    actions:\n"
                        "      - service: {domain: light, name: turn_on, target: light.bulb_1}\n";
  const auto e = validate_error(std::string(kOneBulb) + "automations:\n" + a + a);
  CHECK(e.code() == ErrorCode::DuplicateId);
  CHECK(e.where()->path == "automations[1].id");
}

TEST_CASE("validation covers the remaining structural errors") {
  const std::string base = kOneBulb;
  SECTION("duplicate entity") {
    CHECK(validate_error(base + "  - id: light.bulb_1\n    kind: bulb\n    name: y\n").code() == ErrorCode::DuplicateId);
  }
  SECTION("initial state of the wrong type") {
    const auto e = validate_error("entities:\n  - id: light.a\n    kind: bulb\n    name: x\n    initial: 3.5\n");
    CHECK(e.code() == ErrorCode::TypeMismatch);
    CHECK(e.where()->path == "entities[0].initial");
  }
  SECTION("budget below one record") {
    const auto e = validate_error(base +
                                  "stores:\n  - id: s\n    entity: light.bulb_1\n    scenario: complex_room\n"
                                  "    interval_s: 300\n    budget_units: 8\n");
    CHECK(e.code() == ErrorCode::BudgetTooSmall);
  }
  SECTION("automation referencing an unknown scene") {
    const auto e = validate_error(base + "automations:\n  - id: a\n    triggers:\n      - event: {type: x}\n"
                                         "    actions:\n      - scene: nowhere\n");
    CHECK(e.code() == ErrorCode::DanglingReference);
    CHECK(e.where()->path == "automations[0].actions[0].scene");
  }
  SECTION("condition on an unknown entity") {
    const auto e = validate_error(base + "automations:\n  - id: a\n    triggers:\n      - event: {type: x}\n"
                                         "    conditions:\n      - binary_state: {entity: binary_sensor.x, equals: true}\n"
                                         "    actions:\n      - scene: nowhere\n");
    CHECK(e.code() == ErrorCode::DanglingReference);
  }
  SECTION("automation without triggers") {
    const auto e = validate_error(base + "automations:\n  - id: a\n    triggers: []\n    actions:\n"
                                         "      - service: {domain: light, name: turn_on, target: light.bulb_1}\n");
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
  SECTION("empty scene") {
    CHECK(validate_error(base + "scenes:\n  - id: s\n    name: S\n    targets: []\n").code() ==
          ErrorCode::InvalidArgument);
  }
  SECTION("script step of the wrong type") {
    const auto e = validate_error(base + "script:\n  name: n\n  duration_ms: 1000\n  timeline:\n"
                                         "    - at_ms: 5\n      entity: light.bulb_1\n      state: 21.5\n");
    CHECK(e.code() == ErrorCode::TypeMismatch);
  }
  SECTION("unsorted script") {
    const auto e = validate_error(base + "script:\n  name: n\n  duration_ms: 1000\n  timeline:\n"
                                         "    - at_ms: 5\n      event: x\n    - at_ms: 4\n      event: y\n");
    CHECK(e.code() == ErrorCode::InvalidArgument);
    CHECK(e.where()->path == "script.timeline[1].at_ms");
  }
}

TEST_CASE("every diagnostic carries a document location") {
  const std::vector<std::string> bad = {
      "entities: [",
      "entities:\n  - id: light.a\n    kind: toaster\n    name: x\n",
      "stores: 3\n",
      std::string(kOneBulb) + "stores:\n  - id: s\n    entity: light.b\n    scenario: complex_room\n    interval_s: 15\n",
  };
  for (const auto& text : bad) {
    const auto e = error_of([&] { (void)validate(parse(text)); });
    REQUIRE(e.where());
    CHECK_FALSE(e.where()->path.empty());
    CHECK(e.where()->line);
  }
}

TEST_CASE("empty config emits four empty sections") {
  const auto text = canonical_emit(validate(parse("")));
  CHECK(text == "entities: []\nstores: []\nscenes: []\nautomations: []\n");
  CHECK(validate(parse(text)) == validate(parse("")));
}

TEST_CASE("sample config round-trips and emits deterministically") {
  const auto cfg = harness::sample_config();
  const auto once = canonical_emit(cfg);
  CHECK(once == canonical_emit(cfg));
  CHECK(validate(parse(once)) == cfg);
  // The shipped file is already in canonical form.
  CHECK(once == harness::sample_config_text());
}

TEST_CASE("shipped sample.yaml matches the embedded copy") {
  std::ifstream in(std::string(HEARTH_SOURCE_DIR) + "/config/sample.yaml");
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == harness::sample_config_text());
  CHECK(parse_file(std::string(HEARTH_SOURCE_DIR) + "/config/sample.yaml") == parse(ss.str()));
}

TEST_CASE("sample config covers every scenario with its automation type") {
  const auto cfg = harness::sample_config();
  const auto& doc = cfg.doc();
  CHECK(doc.entities.size() == 14);
  CHECK(doc.stores.size() == 5);
  auto find = [&](const std::string& id) -> const automation::Automation& {
    for (const auto& a : doc.automations)
      if (a.id == id) return a;
    FAIL("missing automation " << id);
    return doc.automations.front();
  };
  // sensor-triggered
  const auto& heat = find("lighting_on_heat");
  CHECK(heat.scenario == ScenarioKind::LightingTemperature);
  CHECK(std::get<automation::StateTrigger>(heat.triggers[0]).above == 25.0);
  // user-initiated
  CHECK(std::holds_alternative<automation::EventTrigger>(find("manual_test").triggers[0]));
  // time-triggered
  CHECK(std::get<automation::TimeTrigger>(find("good_morning_schedule").triggers[0]).at_ms_of_day == 7 * 3'600'000);
  // condition-based
  CHECK(find("evening_routine").conditions.size() == 1);
  // multiple conditions
  CHECK(find("complex_room_presence").conditions.size() == 2);
}

TEST_CASE("time of day formats and parses") {
  CHECK(format_time_of_day(0) == "00:00:00");
  CHECK(format_time_of_day(7 * 3'600'000) == "07:00:00");
  CHECK(format_time_of_day(86'399'999) == "23:59:59.999");
  CHECK(parse_time_of_day("23:59:59.999") == 86'399'999);
  CHECK(parse_time_of_day("18:00:00") == 18 * 3'600'000);
  CHECK_FALSE(parse_time_of_day("24:00:00"));
  CHECK_FALSE(parse_time_of_day("7:00:00"));
  CHECK_FALSE(parse_time_of_day("07:60:00"));
  CHECK_FALSE(parse_time_of_day("07:00:00.5"));
  for (SimMillis t = 0; t < kMillisPerDay; t += 999'983) CHECK(parse_time_of_day(format_time_of_day(t)) == t);
}

TEST_CASE("quoted scalars stay strings, plain ones are typed") {
  const auto doc = parse(
      "entities:\n  - id: light.a\n    kind: bulb\n    name: x\n    attributes:\n"
      "      a: \"true\"\n      b: true\n      c: \"12\"\n      d: 12\n      e: 1.5\n      f: \"\"\n      g: red\n");
  const auto& attrs = doc.entities[0].attributes;
  CHECK(attrs.at("a") == Scalar(std::string("true")));
  CHECK(attrs.at("b") == Scalar(true));
  CHECK(attrs.at("c") == Scalar(std::string("12")));
  CHECK(attrs.at("d") == Scalar(std::int64_t{12}));
  CHECK(attrs.at("e") == Scalar(1.5));
  CHECK(attrs.at("f") == Scalar(std::string()));
  CHECK(attrs.at("g") == Scalar(std::string("red")));
}

TEST_CASE("generated configs round-trip through emit and parse") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    INFO("seed " << seed);
    CHECK(props::config_round_trip(seed, 300) == "");
  }
}
