#pragma once

#include <memory>
#include <string>

#include "hearth/gateway/api.hpp"

namespace hearth::gateway {

/// HTTP/1.1 + WebSocket front end. REST requests go through Api; a
/// WebSocket upgrade on /api/stream receives every bus event as one JSON
/// text frame, in publish order.
class Server {
 public:
  /// Binds immediately; port 0 picks a free port (see port()).
  Server(WorldExecutor& executor, const std::string& address, unsigned short port, int threads = 4);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  unsigned short port() const;
  void start();
  /// Blocks until stop() is called from another thread or a signal handler.
  void wait();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hearth::gateway
