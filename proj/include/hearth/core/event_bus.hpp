#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hearth/core/types.hpp"

namespace hearth {

struct SubscriptionHandle {
  std::uint64_t id = 0;
  bool operator==(const SubscriptionHandle&) const = default;
};

/// Synchronous publish-subscribe bus.
///
/// Delivery happens on the publishing thread. A publish issued from inside a
/// listener is queued and delivered once the event currently being dispatched
/// has reached all of its subscribers, so every subscriber observes events in
/// publish order even when listeners publish. The subscriber set of an event
/// is fixed when it is published.
///
/// Not thread-safe; owned by a single executor.
class EventBus {
 public:
  using Listener = std::function<void(const Event&)>;

  /// `event_type` "*" receives every event.
  SubscriptionHandle subscribe(std::string event_type, Listener listener);
  bool unsubscribe(SubscriptionHandle handle);

  /// Returns the number of subscribers the event is (or will be, when called
  /// re-entrantly) delivered to. Zero subscribers is not an error.
  /// Throws Error{NonMonotoneTimestamp} if the timestamp moves backwards.
  std::size_t publish(Event event);

  std::uint64_t published_count() const noexcept { return published_; }
  SimMillis last_timestamp() const noexcept { return last_timestamp_; }
  std::size_t subscriber_count() const noexcept;

 private:
  struct Subscription {
    std::uint64_t id;
    std::string event_type;
    Listener listener;
    bool active = true;
  };
  struct Pending {
    Event event;
    std::vector<std::shared_ptr<Subscription>> targets;
  };

  std::vector<std::shared_ptr<Subscription>> subscriptions_;
  std::deque<Pending> queue_;
  bool dispatching_ = false;
  std::uint64_t next_id_ = 1;
  std::uint64_t published_ = 0;
  SimMillis last_timestamp_ = 0;
};

}  // namespace hearth
