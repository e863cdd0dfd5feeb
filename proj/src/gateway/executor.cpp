#include "hearth/gateway/executor.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "hearth/core/error.hpp"
#include "hearth/memstore/strategy.hpp"

namespace hearth::gateway {

Json metrics_json(const harness::World& world) {
  Json out = Json::array();
  for (const auto& slot : world.stores()) {
    Json j;
    j["store_id"] = slot.spec.id;
    j["entity"] = slot.spec.entity.str();
    j["strategy"] = memstore::to_string(slot.store.strategy());
    j["interval_s"] = slot.spec.interval_s;
    j["bytes_used"] = slot.store.bytes_used();
    j["peak_units"] = slot.peak_units;
    j["point_count"] = slot.store.point_count();
    j["budget_units"] = slot.store.budget_units();
    out.push_back(std::move(j));
  }
  return out;
}

std::uint64_t Broadcaster::add(Sink sink) {
  std::lock_guard lock(mu_);
  sinks_.emplace(next_, std::move(sink));
  return next_++;
}

void Broadcaster::remove(std::uint64_t id) {
  std::lock_guard lock(mu_);
  sinks_.erase(id);
}

void Broadcaster::publish(const std::string& frame) {
  auto shared = std::make_shared<const std::string>(frame);
  std::lock_guard lock(mu_);
  for (auto& [id, sink] : sinks_) sink(shared);
}

std::size_t Broadcaster::size() const {
  std::lock_guard lock(mu_);
  return sinks_.size();
}

WorldExecutor::WorldExecutor(const config::ValidatedConfig& cfg, harness::WorldOptions opts, double speed)
    : world_(std::make_unique<harness::World>(cfg, std::move(opts))), speed_(speed) {
  if (!(speed >= 0.0)) throw Error(ErrorCode::InvalidArgument, "speed must be >= 0");
  world_->runtime().bus().subscribe(std::string(event_types::kAll),
                                    [this](const Event& e) { stream_.publish(to_json(e).dump()); });
  refresh();
  thread_ = std::thread([this] { loop(); });
}

WorldExecutor::~WorldExecutor() { stop(); }

void WorldExecutor::stop() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  cv_.notify_all();
  if (thread_.joinable()) thread_.join();
  // unexecuted tasks break their promises
  std::lock_guard lock(mu_);
  tasks_.clear();
}

double WorldExecutor::speed() const {
  std::lock_guard lock(mu_);
  return speed_;
}

void WorldExecutor::set_speed(double speed) {
  if (!(speed >= 0.0)) throw Error(ErrorCode::InvalidArgument, "speed must be >= 0");
  std::lock_guard lock(mu_);
  speed_ = speed;
}

std::shared_ptr<const Snapshot> WorldExecutor::snapshot() const {
  std::lock_guard lock(snap_mu_);
  return snapshot_;
}

void WorldExecutor::enqueue(std::function<void()> task) {
  {
    std::lock_guard lock(mu_);
    if (stopping_) throw Error(ErrorCode::InvalidArgument, "executor is stopped");
    tasks_.push_back(std::move(task));
  }
  cv_.notify_one();
}

void WorldExecutor::refresh() {
  auto snap = std::make_shared<Snapshot>();
  snap->now = world_->now();
  {
    std::lock_guard lock(mu_);
    snap->speed = speed_;
  }
  for (const auto& e : world_->runtime().enumerate()) snap->states.push_back(to_json(e));
  snap->metrics = metrics_json(*world_);
  std::lock_guard lock(snap_mu_);
  snapshot_ = std::move(snap);
}

void WorldExecutor::refresh_noexcept() noexcept {
  try {
    refresh();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hearth: snapshot refresh failed: %s\n", e.what());
  }
}

void WorldExecutor::loop() {
  using clock = std::chrono::steady_clock;
  const auto step = std::chrono::milliseconds(kStepMs);
  auto next_tick = clock::now() + step;
  double carry = 0.0;  // fractional simulated ms left over between steps

  std::unique_lock lock(mu_);
  for (;;) {
    cv_.wait_until(lock, next_tick, [&] { return stopping_ || !tasks_.empty(); });
    if (stopping_) return;
    if (!tasks_.empty()) {
      auto task = std::move(tasks_.front());
      tasks_.pop_front();
      lock.unlock();
      task();  // packaged_task captures its own exceptions
      lock.lock();
      continue;
    }
    const double speed = speed_;
    next_tick += step;
    if (speed <= 0.0) continue;
    lock.unlock();
    carry += speed * static_cast<double>(kStepMs);
    const auto dt = static_cast<SimMillis>(std::floor(carry));
    carry -= static_cast<double>(dt);
    if (dt > 0) {
      try {
        world_->advance(dt);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "hearth: clock step failed: %s\n", e.what());
      }
      refresh();
    }
    lock.lock();
  }
}

}  // namespace hearth::gateway
