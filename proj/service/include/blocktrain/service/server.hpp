#pragma once

#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <chrono>
#include <memory>

#include "blocktrain/service/session_manager.hpp"

namespace blocktrain::service {

/// HTTP and WebSocket front end on one port.
///
///   GET  /health    -> {"status": "ok", "protocol": "wire_v1", "sessions": N}
///   POST /sessions  -> body is a GameConfig (may be empty); replies
///                      {"session": "<id>"} or {"code": ..., "message": ...}
///   any path with an Upgrade header -> wire_v1 WebSocket
///
/// All handlers run on the io_context's thread(s).
class Server {
 public:
  Server(boost::asio::io_context& ioc, const boost::asio::ip::tcp::endpoint& endpoint,
         SessionManager& manager,
         std::chrono::milliseconds tick_interval = std::chrono::milliseconds(250));
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Starts accepting connections and the disconnect-timeout timer.
  void start();
  /// Stops accepting and cancels the timer; runs on the io_context, so it is
  /// safe from any thread. Open connections close when the io_context stops.
  void stop();

  unsigned short port() const;

  struct Impl;

 private:
  std::shared_ptr<Impl> impl_;
};

}  // namespace blocktrain::service
