#include "hearth/core/event_bus.hpp"

#include <algorithm>

#include "hearth/core/error.hpp"

namespace hearth {

SubscriptionHandle EventBus::subscribe(std::string event_type, Listener listener) {
  if (event_type.empty()) {
    throw Error(ErrorCode::InvalidArgument, "event type must be non-empty");
  }
  auto sub = std::make_shared<Subscription>(
      Subscription{next_id_++, std::move(event_type), std::move(listener)});
  subscriptions_.push_back(sub);
  return SubscriptionHandle{sub->id};
}

bool EventBus::unsubscribe(SubscriptionHandle handle) {
  auto it = std::find_if(subscriptions_.begin(), subscriptions_.end(),
                         [&](const auto& s) { return s->id == handle.id; });
  if (it == subscriptions_.end()) return false;
  (*it)->active = false;
  subscriptions_.erase(it);
  return true;
}

std::size_t EventBus::subscriber_count() const noexcept { return subscriptions_.size(); }

std::size_t EventBus::publish(Event event) {
  if (event.timestamp < last_timestamp_) {
    throw Error(ErrorCode::NonMonotoneTimestamp,
                "event '" + event.event_type + "' at " + std::to_string(event.timestamp) +
                    " ms precedes last published " + std::to_string(last_timestamp_) + " ms");
  }
  last_timestamp_ = event.timestamp;
  ++published_;

  Pending pending{std::move(event), {}};
  for (const auto& sub : subscriptions_) {
    if (sub->event_type == event_types::kAll || sub->event_type == pending.event.event_type) {
      pending.targets.push_back(sub);
    }
  }
  const std::size_t delivered = pending.targets.size();
  queue_.push_back(std::move(pending));
  if (dispatching_) return delivered;

  dispatching_ = true;
  // A throwing listener abandons whatever is still queued.
  struct Reset {
    bool& flag;
    std::deque<Pending>& queue;
    ~Reset() {
      flag = false;
      queue.clear();
    }
  } reset{dispatching_, queue_};

  while (!queue_.empty()) {
    Pending next = std::move(queue_.front());
    queue_.pop_front();
    for (const auto& sub : next.targets) {
      if (sub->active) sub->listener(next.event);
    }
  }
  return delivered;
}

}  // namespace hearth
