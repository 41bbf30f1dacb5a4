#include "ws_bot.hpp"

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "blocktrain/rng.hpp"
#include "blocktrain/serialize.hpp"
#include "blocktrain/service/wire.hpp"

namespace blocktrain::testing {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;
using nlohmann::json;

HttpReply http_request(unsigned short port, const std::string& method, const std::string& target,
                       const std::string& body) {
  net::io_context ioc;
  tcp::socket socket(ioc);
  socket.connect({net::ip::make_address("127.0.0.1"), port});
  http::request<http::string_body> req{http::string_to_verb(method), target, 11};
  req.set(http::field::host, "127.0.0.1");
  req.body() = body;
  req.prepare_payload();
  http::write(socket, req);
  beast::flat_buffer buffer;
  http::response<http::string_body> res;
  http::read(socket, buffer, res);
  beast::error_code ec;
  socket.shutdown(tcp::socket::shutdown_both, ec);
  return {static_cast<int>(res.result_int()), res.body()};
}

BotResult run_ws_bot(unsigned short port, const std::string& session, const std::string& name,
                     std::uint64_t seed) {
  net::io_context ioc;
  websocket::stream<tcp::socket> ws(ioc);
  ws.next_layer().connect({net::ip::make_address("127.0.0.1"), port});
  ws.next_layer().set_option(tcp::no_delay(true));
  ws.handshake("127.0.0.1:" + std::to_string(port), "/");
  ws.text(true);
  ws.write(net::buffer(service::encode(service::Join{session, name})));

  Rng rng(seed);
  BotResult result;
  std::uint64_t acted_on = 0;
  beast::flat_buffer buffer;
  while (true) {
    ws.read(buffer);
    const json msg = json::parse(beast::buffers_to_string(buffer.data()));
    buffer.consume(buffer.size());
    const auto type = msg.at("type").get<std::string>();

    if (type == "Error") throw std::runtime_error("server error: " + msg.dump());
    if (type == "ActionResult" && !msg.at("accepted").get<bool>()) {
      throw std::runtime_error("action rejected: " + msg.dump());
    }
    if (type == "ChainFinal") {
      result.chain = msg.at("chain").get<Chain>();
      break;
    }
    if (type != "View") continue;

    const auto version = msg.at("version").get<std::uint64_t>();
    result.versions.push_back(version);
    result.seat = msg.at("your_seat").get<PlayerIndex>();
    const json& legal = msg.at("view").at("legal_actions");
    if (msg.at("turn") != msg.at("your_seat") || legal.empty() || version <= acted_on) continue;
    acted_on = version;
    const Action action = legal.at(rng.below(legal.size())).get<Action>();
    ws.write(net::buffer(service::encode(service::Act{action})));
    ++result.moves;
  }
  beast::error_code ec;
  ws.close(websocket::close_code::normal, ec);
  return result;
}

}  // namespace blocktrain::testing
