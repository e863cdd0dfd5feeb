#include <catch2/catch_amalgamated.hpp>

#include "hearth/core/error.hpp"
#include "hearth/core/event_bus.hpp"
#include "properties.hpp"

using namespace hearth;

namespace {

Event ev(std::string type, SimMillis t = 0) {
  Event e;
  e.event_type = std::move(type);
  e.timestamp = t;
  return e;
}

}  // namespace

TEST_CASE("publish with no subscribers delivers to nobody", "[bus]") {
  EventBus bus;
  CHECK(bus.publish(ev("panic_pressed")) == 0);
  CHECK(bus.published_count() == 1);
}

TEST_CASE("delivery respects the subscribed type", "[bus]") {
  EventBus bus;
  int a = 0, b = 0;
  bus.subscribe("state_changed", [&](const Event&) { ++a; });
  bus.subscribe("panic_pressed", [&](const Event&) { ++b; });
  CHECK(bus.publish(ev("state_changed")) == 1);
  CHECK(a == 1);
  CHECK(b == 0);
}

TEST_CASE("two subscribers each receive one copy", "[bus]") {
  EventBus bus;
  int a = 0, b = 0;
  bus.subscribe("tick", [&](const Event&) { ++a; });
  bus.subscribe("tick", [&](const Event&) { ++b; });
  CHECK(bus.publish(ev("tick")) == 2);
  CHECK(a == 1);
  CHECK(b == 1);
}

TEST_CASE("wildcard receives everything in publish order", "[bus]") {
  EventBus bus;
  std::vector<std::string> seen;
  bus.subscribe("*", [&](const Event& e) { seen.push_back(e.event_type); });
  bus.publish(ev("a", 1));
  bus.publish(ev("b", 2));
  bus.publish(ev("c", 2));
  CHECK(seen == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("empty event type cannot be subscribed", "[bus]") {
  EventBus bus;
  CHECK_THROWS_AS(bus.subscribe("", [](const Event&) {}), Error);
}

TEST_CASE("timestamps may not go backwards", "[bus]") {
  EventBus bus;
  bus.publish(ev("a", 10));
  try {
    bus.publish(ev("a", 9));
    FAIL("expected NonMonotoneTimestamp");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonMonotoneTimestamp);
  }
  CHECK(bus.last_timestamp() == 10);
}

TEST_CASE("unsubscribe stops delivery and reports unknown handles", "[bus]") {
  EventBus bus;
  int n = 0;
  auto h = bus.subscribe("x", [&](const Event&) { ++n; });
  bus.publish(ev("x"));
  CHECK(bus.unsubscribe(h));
  CHECK_FALSE(bus.unsubscribe(h));
  bus.publish(ev("x"));
  CHECK(n == 1);
  CHECK(bus.subscriber_count() == 0);
}

TEST_CASE("nested publishes are delivered after the current event", "[bus]") {
  EventBus bus;
  std::vector<std::string> first, second;
  bus.subscribe("*", [&](const Event& e) {
    first.push_back(e.event_type);
    if (e.event_type == "outer") bus.publish(ev("inner"));
  });
  bus.subscribe("*", [&](const Event& e) { second.push_back(e.event_type); });
  CHECK(bus.publish(ev("outer")) == 2);
  CHECK(first == std::vector<std::string>{"outer", "inner"});
  CHECK(second == first);
}

TEST_CASE("a listener subscribed mid-dispatch misses the current event", "[bus]") {
  EventBus bus;
  int late = 0;
  bool added = false;
  bus.subscribe("x", [&](const Event&) {
    if (!added) {
      added = true;
      bus.subscribe("x", [&](const Event&) { ++late; });
    }
  });
  bus.publish(ev("x"));
  CHECK(late == 0);
  bus.publish(ev("x"));
  CHECK(late == 1);
}

TEST_CASE("a listener removed mid-dispatch is skipped", "[bus]") {
  EventBus bus;
  int second = 0;
  SubscriptionHandle h2;
  bus.subscribe("x", [&](const Event&) { bus.unsubscribe(h2); });
  h2 = bus.subscribe("x", [&](const Event&) { ++second; });
  bus.publish(ev("x"));
  CHECK(second == 0);
}

TEST_CASE("bus properties hold under randomized operations", "[bus][property]") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    INFO("seed " << seed);
    CHECK(props::event_bus_properties(seed, 10'000).empty());
  }
}
