#include "hearth/gateway/server.hpp"

#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <mutex>
#include <thread>
#include <vector>

namespace hearth::gateway {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

// A client that falls this far behind the stream is dropped.
constexpr std::size_t kMaxQueuedFrames = 50'000;

void add_cors(http::response<http::string_body>& res) {
  res.set(http::field::access_control_allow_origin, "*");
  res.set(http::field::access_control_allow_methods, "GET, POST, OPTIONS");
  res.set(http::field::access_control_allow_headers, "Content-Type");
}

class StreamSession : public std::enable_shared_from_this<StreamSession> {
 public:
  StreamSession(tcp::socket&& socket, Broadcaster& stream) : ws_(std::move(socket)), stream_(stream) {}

  ~StreamSession() {
    if (sink_) stream_.remove(sink_);
  }

  void run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.text(true);
    // Register before the handshake completes so no event published after
    // the upgrade request is missed; frames queue until accept finishes.
    std::weak_ptr<StreamSession> weak = shared_from_this();
    sink_ = stream_.add([weak](const std::shared_ptr<const std::string>& frame) {
      if (auto self = weak.lock()) {
        net::post(self->ws_.get_executor(), [self, frame] { self->queue(frame); });
      }
    });
    ws_.async_accept(req, beast::bind_front_handler(&StreamSession::on_accept, shared_from_this()));
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return drop();
    open_ = true;
    read();
    flush();
  }

  void read() {
    ws_.async_read(in_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->drop();
      self->in_.consume(self->in_.size());  // clients have nothing to say
      self->read();
    });
  }

  void queue(const std::shared_ptr<const std::string>& frame) {
    if (closing_) return;
    if (out_.size() >= kMaxQueuedFrames) return fail();
    out_.push_back(frame);
    flush();
  }

  void flush() {
    if (!open_ || writing_ || out_.empty() || closing_) return;
    writing_ = true;
    ws_.async_write(net::buffer(*out_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->writing_ = false;
      if (ec) return self->drop();
      self->out_.pop_front();
      self->flush();
    });
  }

  void fail() {
    closing_ = true;
    out_.clear();
    ws_.async_close(websocket::close_reason(websocket::close_code::internal_error),
                    [self = shared_from_this()](beast::error_code) { self->drop(); });
  }

  void drop() {
    if (sink_) {
      stream_.remove(sink_);
      sink_ = 0;
    }
    out_.clear();
  }

  websocket::stream<beast::tcp_stream> ws_;
  Broadcaster& stream_;
  std::uint64_t sink_ = 0;
  beast::flat_buffer in_;
  std::deque<std::shared_ptr<const std::string>> out_;
  bool open_ = false;
  bool writing_ = false;
  bool closing_ = false;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, const Api& api, Broadcaster& stream)
      : stream_(std::move(socket)), api_(api), broadcaster_(stream) {}

  void run() {
    net::dispatch(stream_.get_executor(), beast::bind_front_handler(&HttpSession::read, shared_from_this()));
  }

 private:
  void read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(60));
    http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    if (websocket::is_upgrade(req_)) {
      const auto target = std::string(req_.target());
      if (target == "/api/stream" || target.rfind("/api/stream?", 0) == 0) {
        stream_.expires_never();
        std::make_shared<StreamSession>(stream_.release_socket(), broadcaster_)->run(std::move(req_));
        return;
      }
    }

    auto res = std::make_shared<http::response<http::string_body>>();
    res->version(req_.version());
    res->keep_alive(req_.keep_alive());
    res->set(http::field::server, "hearth");
    add_cors(*res);
    if (req_.method() == http::verb::options) {
      res->result(http::status::no_content);
    } else {
      // Mutations block this I/O thread until the world thread answers.
      const auto out = api_.handle({std::string(req_.method_string()), std::string(req_.target()), req_.body()});
      res->result(static_cast<http::status>(out.status));
      res->set(http::field::content_type, "application/json");
      res->body() = out.body;
    }
    res->prepare_payload();
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
      if (ec) return;
      if (!res->keep_alive()) {
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
        return;
      }
      self->read();
    });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  const Api& api_;
  Broadcaster& broadcaster_;
};

}  // namespace

struct Server::Impl {
  WorldExecutor& executor;
  Api api;
  int threads;
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::vector<std::thread> pool;
  std::mutex mu;
  std::condition_variable cv;
  bool stopped = false;

  Impl(WorldExecutor& ex, const std::string& address, unsigned short port, int n)
      : executor(ex), api(ex), threads(n), ioc(n), acceptor(net::make_strand(ioc)) {
    const tcp::endpoint ep(net::ip::make_address(address), port);
    acceptor.open(ep.protocol());
    acceptor.set_option(net::socket_base::reuse_address(true));
    acceptor.bind(ep);
    acceptor.listen(net::socket_base::max_listen_connections);
  }

  void accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (ec) {
        if (ec != net::error::operation_aborted) std::fprintf(stderr, "hearth: accept: %s\n", ec.message().c_str());
        if (!acceptor.is_open()) return;
      } else {
        std::make_shared<HttpSession>(std::move(socket), api, executor.stream())->run();
      }
      accept();
    });
  }
};

Server::Server(WorldExecutor& executor, const std::string& address, unsigned short port, int threads)
    : impl_(std::make_unique<Impl>(executor, address, port, threads < 1 ? 1 : threads)) {}

Server::~Server() { stop(); }

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::start() {
  impl_->accept();
  for (int i = 0; i < impl_->threads; ++i) impl_->pool.emplace_back([this] { impl_->ioc.run(); });
}

void Server::wait() {
  std::unique_lock lock(impl_->mu);
  impl_->cv.wait(lock, [this] { return impl_->stopped; });
}

void Server::stop() {
  {
    std::lock_guard lock(impl_->mu);
    if (impl_->stopped) return;
    impl_->stopped = true;
  }
  net::post(impl_->acceptor.get_executor(), [this] {
    beast::error_code ec;
    impl_->acceptor.close(ec);
  });
  impl_->ioc.stop();
  for (auto& t : impl_->pool) t.join();
  impl_->pool.clear();
  impl_->cv.notify_all();
}

}  // namespace hearth::gateway
