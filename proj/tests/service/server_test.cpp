#include <gtest/gtest.h>

#include <boost/asio/io_context.hpp>
#include <future>
#include <nlohmann/json.hpp>
#include <thread>

#include "blocktrain/ledger_file.hpp"
#include "blocktrain/service/server.hpp"
#include "ws_bot.hpp"

namespace blocktrain::service {
namespace {

using nlohmann::json;
namespace net = boost::asio;

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto dir = std::filesystem::temp_directory_path() / "blocktrain_service_tests";
    std::filesystem::create_directories(dir);
    ledger_ = dir / "server_ledger.jsonl";
    std::filesystem::remove(ledger_);
    ManagerOptions options;
    options.ledger = ledger_;
    manager_ = std::make_unique<SessionManager>(options);
    server_ = std::make_unique<Server>(ioc_, net::ip::tcp::endpoint(net::ip::make_address("127.0.0.1"), 0),
                                       *manager_);
    server_->start();
    thread_ = std::thread([this] { ioc_.run(); });
  }

  void TearDown() override {
    server_->stop();
    ioc_.stop();
    thread_.join();
  }

  unsigned short port() const { return server_->port(); }

  net::io_context ioc_;
  std::filesystem::path ledger_;
  std::unique_ptr<SessionManager> manager_;
  std::unique_ptr<Server> server_;
  std::thread thread_;
};

TEST_F(ServerTest, Health) {
  const auto reply = testing::http_request(port(), "GET", "/health");
  EXPECT_EQ(reply.status, 200);
  const auto body = json::parse(reply.body);
  EXPECT_EQ(body.at("status"), "ok");
  EXPECT_EQ(body.at("protocol"), "wire_v1");
}

TEST_F(ServerTest, CreateSessionOverHttp) {
  const auto created = testing::http_request(port(), "POST", "/sessions", R"({"players": 3})");
  EXPECT_EQ(created.status, 201);
  const auto id = json::parse(created.body).at("session").get<std::string>();
  ASSERT_TRUE(manager_->session(id));
  EXPECT_EQ(manager_->session(id)->config.players, 3u);

  const auto bad = testing::http_request(port(), "POST", "/sessions", R"({"players": 6})");
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(json::parse(bad.body).at("code"), "ConfigInvalid");

  EXPECT_EQ(testing::http_request(port(), "POST", "/sessions", "{oops").status, 400);
  EXPECT_EQ(testing::http_request(port(), "GET", "/nowhere").status, 404);
}

TEST_F(ServerTest, TwoWebSocketBotsPlayToCompletion) {
  const auto created = testing::http_request(port(), "POST", "/sessions", R"({"players": 2})");
  const auto id = json::parse(created.body).at("session").get<std::string>();

  auto a = std::async(std::launch::async, [&] { return testing::run_ws_bot(port(), id, "ana", 1); });
  auto b = std::async(std::launch::async, [&] { return testing::run_ws_bot(port(), id, "ben", 2); });
  const auto ra = a.get();
  const auto rb = b.get();

  EXPECT_NE(ra.seat, rb.seat);
  ASSERT_EQ(ra.chain.blocks.size(), 5u);
  EXPECT_EQ(ra.chain, rb.chain);
  EXPECT_TRUE(verify_chain(ra.chain).valid);
  EXPECT_GT(ra.moves + rb.moves, 0u);
  for (const auto* r : {&ra, &rb}) {
    for (std::size_t i = 1; i < r->versions.size(); ++i) {
      EXPECT_EQ(r->versions[i], r->versions[i - 1] + 1);
    }
  }
  EXPECT_EQ(load_ledger(ledger_), std::vector<Chain>{ra.chain});
}

}  // namespace
}  // namespace blocktrain::service
