#include "blocktrain/service/wire.hpp"

#include "blocktrain/serialize.hpp"

namespace blocktrain::service {

using nlohmann::json;

namespace {

json envelope(std::string_view type) {
  return json{{"protocol", kWireVersion}, {"type", type}};
}

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorCode::BadMessage, why); }

std::string string_field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) bad(std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

}  // namespace

std::string_view to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::Lobby: return "Lobby";
    case SessionStatus::Playing: return "Playing";
    case SessionStatus::Finished: return "Finished";
  }
  return "?";
}

ClientMessage parse_client_message(std::string_view text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) bad("frame is not a JSON object");
  if (string_field(j, "protocol") != kWireVersion) bad("unsupported protocol version");
  const std::string type = string_field(j, "type");

  if (type == "CreateSession") {
    const json config = j.contains("config") ? j.at("config") : json::object();
    try {
      return CreateSession{config.get<GameConfig>()};
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ConfigInvalid, e.what());
    }
  }
  if (type == "Join") return Join{string_field(j, "session"), string_field(j, "name")};
  if (type == "Act") {
    if (!j.contains("action") || !j.at("action").is_object()) bad("Act needs an action object");
    try {
      return Act{j.at("action").get<Action>()};
    } catch (const json::exception& e) {
      bad(e.what());
    }
  }
  if (type == "Leave") return Leave{};
  bad("unknown message type " + type);
}

std::string encode(const ClientMessage& message) {
  return std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        json j;
        if constexpr (std::is_same_v<T, CreateSession>) {
          j = envelope("CreateSession");
          j["config"] = m.config;
        } else if constexpr (std::is_same_v<T, Join>) {
          j = envelope("Join");
          j["session"] = m.session;
          j["name"] = m.name;
        } else if constexpr (std::is_same_v<T, Act>) {
          j = envelope("Act");
          j["action"] = m.action;
        } else {
          j = envelope("Leave");
        }
        return j.dump();
      },
      message);
}

std::string lobby_message(const std::string& session, std::size_t players,
                          const std::vector<std::string>& seats, SessionStatus status) {
  json j = envelope("Lobby");
  j["session"] = session;
  j["players"] = players;
  j["seats"] = seats;
  j["status"] = to_string(status);
  return j.dump();
}

std::string view_message(const std::string& session, const ViewState& view,
                         std::uint64_t version) {
  json j = envelope("View");
  j["session"] = session;
  j["your_seat"] = view.viewer;
  j["turn"] = view.turn;
  j["version"] = version;
  j["view"] = view;
  return j.dump();
}

std::string action_result_message(const ActionResult& result) {
  json j = envelope("ActionResult");
  j["accepted"] = result.accepted();
  if (result.error) j["error"] = to_string(*result.error);
  return j.dump();
}

std::string chain_final_message(const std::string& session, const Chain& chain) {
  json j = envelope("ChainFinal");
  j["session"] = session;
  j["chain"] = chain;
  return j.dump();
}

std::string error_message(ErrorCode code, std::string_view message) {
  json j = envelope("Error");
  j["code"] = to_string(code);
  j["message"] = message;
  return j.dump();
}

}  // namespace blocktrain::service
