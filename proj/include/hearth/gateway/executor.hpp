#pragma once

#include <condition_variable>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>

#include "hearth/core/json.hpp"
#include "hearth/harness/world.hpp"

namespace hearth::gateway {

/// What read-only endpoints serve: the state of the world after the last
/// mutation or clock step.
struct Snapshot {
  SimMillis now = 0;
  double speed = 0.0;
  Json states = Json::array();   // to_json(Entity) per entity, by id
  Json metrics = Json::array();  // one object per store
};

/// Per-store memory metrics as served by the gateway.
Json metrics_json(const harness::World& world);

/// Fans serialized events out to stream sinks. Sinks are called on the
/// world thread in publish order and must not block.
class Broadcaster {
 public:
  using Sink = std::function<void(const std::shared_ptr<const std::string>&)>;
  std::uint64_t add(Sink sink);
  void remove(std::uint64_t id);
  void publish(const std::string& frame);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::uint64_t, Sink> sinks_;
  std::uint64_t next_ = 1;
};

/// Owns the world and the one thread allowed to touch it. Mutations are
/// queued with submit(); between tasks the clock advances by speed x 100 ms
/// of simulated time for every 100 ms of wall time (speed 0 = paused).
class WorldExecutor {
 public:
  static constexpr SimMillis kStepMs = 100;

  WorldExecutor(const config::ValidatedConfig& cfg, harness::WorldOptions opts, double speed = 1.0);
  ~WorldExecutor();
  WorldExecutor(const WorldExecutor&) = delete;
  WorldExecutor& operator=(const WorldExecutor&) = delete;

  /// Runs fn(world) on the world thread. Exceptions travel through the future.
  template <typename F>
  auto submit(F&& fn) -> std::future<std::invoke_result_t<F&, harness::World&>> {
    using R = std::invoke_result_t<F&, harness::World&>;
    auto task = std::make_shared<std::packaged_task<R()>>(
        [this, f = std::forward<F>(fn)]() mutable -> R {
          // Refresh before the future resolves so callers read their writes.
          struct Refresh {
            WorldExecutor* self;
            ~Refresh() { self->refresh_noexcept(); }
          } guard{this};
          return f(*world_);
        });
    auto fut = task->get_future();
    enqueue([task] { (*task)(); });
    return fut;
  }

  std::shared_ptr<const Snapshot> snapshot() const;
  Broadcaster& stream() noexcept { return stream_; }

  double speed() const;
  void set_speed(double speed);
  void stop();

 private:
  void enqueue(std::function<void()> task);
  void loop();
  void refresh();
  void refresh_noexcept() noexcept;

  std::unique_ptr<harness::World> world_;
  Broadcaster stream_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::function<void()>> tasks_;
  bool stopping_ = false;
  double speed_;

  mutable std::mutex snap_mu_;
  std::shared_ptr<const Snapshot> snapshot_;

  std::thread thread_;
};

}  // namespace hearth::gateway
