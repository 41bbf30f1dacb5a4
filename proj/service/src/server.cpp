#include "blocktrain/service/server.hpp"

#include <spdlog/spdlog.h>

#include <boost/asio/post.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <atomic>
#include <deque>
#include <nlohmann/json.hpp>

#include "blocktrain/serialize.hpp"

namespace blocktrain::service {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;
using nlohmann::json;

struct Server::Impl : std::enable_shared_from_this<Server::Impl> {
  Impl(net::io_context& ioc, const tcp::endpoint& endpoint, SessionManager& manager,
       std::chrono::milliseconds tick)
      : ioc(ioc), acceptor(ioc), timer(ioc), manager(manager), tick_interval(tick) {
    acceptor.open(endpoint.protocol());
    acceptor.set_option(net::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen(net::socket_base::max_listen_connections);
    port = acceptor.local_endpoint().port();
  }

  void accept();
  void schedule_tick();

  net::io_context& ioc;
  tcp::acceptor acceptor;
  net::steady_timer timer;
  SessionManager& manager;
  std::chrono::milliseconds tick_interval;
  std::atomic<ConnectionId> next_id = 1;
  std::atomic<bool> stopped = false;
  unsigned short port = 0;
};

namespace {

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket socket, std::shared_ptr<Server::Impl> server)
      : ws_(std::move(socket)), server_(std::move(server)) {}

  void accept(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      self->on_accept(ec);
    });
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) {
      spdlog::debug("websocket handshake failed: {}", ec.message());
      return;
    }
    id_ = server_->next_id++;
    std::weak_ptr<WsConnection> weak = shared_from_this();
    auto executor = ws_.get_executor();
    server_->manager.connect(id_, [weak, executor](const std::string& frame) {
      net::post(executor, [weak, frame] {
        if (auto self = weak.lock()) self->send(frame);
      });
    });
    spdlog::debug("connection {} opened", id_);
    read();
  }

  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->on_read(ec);
    });
  }

  void on_read(beast::error_code ec) {
    if (ec) {
      spdlog::debug("connection {} closed: {}", id_, ec.message());
      server_->manager.disconnect(id_);
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    server_->manager.handle_frame(id_, text);
    read();
  }

  void send(const std::string& frame) {
    queue_.push_back(frame);
    if (queue_.size() == 1) write();
  }

  void write() {
    ws_.text(true);
    ws_.async_write(net::buffer(queue_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) return;
                      self->queue_.pop_front();
                      if (!self->queue_.empty()) self->write();
                    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  std::shared_ptr<Server::Impl> server_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  ConnectionId id_ = 0;
};

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket socket, std::shared_ptr<Server::Impl> server)
      : stream_(std::move(socket)), server_(std::move(server)) {}

  void run() { read(); }

 private:
  void read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) {
                       self->on_read(ec);
                     });
  }

  void on_read(beast::error_code ec) {
    if (ec == http::error::end_of_stream) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    if (ec) return;
    if (websocket::is_upgrade(req_)) {
      stream_.expires_never();
      std::make_shared<WsConnection>(stream_.release_socket(), server_)->accept(std::move(req_));
      return;
    }
    auto res = std::make_shared<http::response<http::string_body>>(handle(req_));
    http::async_write(stream_, *res,
                      [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
                        if (ec || !res->keep_alive()) {
                          self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
                          return;
                        }
                        self->read();
                      });
  }

  http::response<http::string_body> handle(const http::request<http::string_body>& req) {
    http::response<http::string_body> res;
    res.version(req.version());
    res.keep_alive(req.keep_alive());
    res.set(http::field::content_type, "application/json");
    auto reply = [&](http::status status, const json& body) {
      res.result(status);
      res.body() = body.dump();
      res.prepare_payload();
    };
    const auto target = req.target();

    if (target == "/health" && req.method() == http::verb::get) {
      reply(http::status::ok, json{{"status", "ok"},
                                   {"protocol", kWireVersion},
                                   {"sessions", server_->manager.session_ids().size()}});
    } else if (target == "/sessions" && req.method() == http::verb::post) {
      try {
        const json body = req.body().empty() ? json::object() : json::parse(req.body());
        GameConfig config;
        try {
          config = body.get<GameConfig>();
        } catch (const json::exception& e) {
          throw Error(ErrorCode::ConfigInvalid, e.what());
        }
        reply(http::status::created, json{{"session", server_->manager.create_session(config)}});
      } catch (const json::parse_error& e) {
        reply(http::status::bad_request,
              json{{"code", to_string(ErrorCode::BadMessage)}, {"message", e.what()}});
      } catch (const Error& e) {
        reply(http::status::bad_request,
              json{{"code", to_string(e.code())}, {"message", e.what()}});
      }
    } else {
      reply(http::status::not_found, json{{"code", "NotFound"}, {"message", "no such endpoint"}});
    }
    return res;
  }

  beast::tcp_stream stream_;
  std::shared_ptr<Server::Impl> server_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

}  // namespace

void Server::Impl::accept() {
  acceptor.async_accept(net::make_strand(ioc), [self = shared_from_this()](
                                                   beast::error_code ec, tcp::socket socket) {
    if (self->stopped) return;
    if (!ec) {
      beast::error_code ignored;
      socket.set_option(tcp::no_delay(true), ignored);
      std::make_shared<HttpConnection>(std::move(socket), self)->run();
    }
    self->accept();
  });
}

void Server::Impl::schedule_tick() {
  timer.expires_after(tick_interval);
  timer.async_wait([self = shared_from_this()](beast::error_code ec) {
    if (ec || self->stopped) return;
    self->manager.tick();
    self->schedule_tick();
  });
}

Server::Server(net::io_context& ioc, const tcp::endpoint& endpoint, SessionManager& manager,
               std::chrono::milliseconds tick_interval)
    : impl_(std::make_shared<Impl>(ioc, endpoint, manager, tick_interval)) {}

Server::~Server() = default;

void Server::start() {
  impl_->accept();
  impl_->schedule_tick();
  spdlog::info("listening on {}:{}", impl_->acceptor.local_endpoint().address().to_string(),
               port());
}

void Server::stop() {
  net::post(impl_->ioc, [impl = impl_] {
    if (impl->stopped.exchange(true)) return;
    beast::error_code ec;
    impl->acceptor.close(ec);
    impl->timer.cancel();
  });
}

unsigned short Server::port() const { return impl_->port; }

}  // namespace blocktrain::service
