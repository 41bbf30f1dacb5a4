#pragma once

// wire_v1: one JSON object per WebSocket text frame. Every message carries
// "protocol": "wire_v1" and a "type" tag.
//
//   client -> server
//     {"type": "CreateSession", "config": {...}}
//     {"type": "Join", "session": "<id>", "name": "ana"}
//     {"type": "Act", "action": {"type": "PlaySupply", "card_id": 3}}
//     {"type": "Leave"}
//
//   server -> client
//     {"type": "Lobby", "session": "<id>", "players": 2, "seats": ["ana"], "status": "Lobby"}
//     {"type": "View", "session": "<id>", "your_seat": 0, "turn": 1, "version": 7, "view": {...}}
//     {"type": "ActionResult", "accepted": true}
//     {"type": "ActionResult", "accepted": false, "error": "NotYourTurn"}
//     {"type": "ChainFinal", "session": "<id>", "chain": [...]}
//     {"type": "Error", "code": "UnknownSession", "message": "..."}

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "blocktrain/config.hpp"
#include "blocktrain/errors.hpp"
#include "blocktrain/rules.hpp"

namespace blocktrain::service {

inline constexpr const char* kWireVersion = "wire_v1";

struct CreateSession {
  GameConfig config;
  friend bool operator==(const CreateSession&, const CreateSession&) = default;
};

struct Join {
  std::string session;
  std::string name;
  friend bool operator==(const Join&, const Join&) = default;
};

struct Act {
  Action action;
  friend bool operator==(const Act&, const Act&) = default;
};

struct Leave {
  friend bool operator==(const Leave&, const Leave&) = default;
};

using ClientMessage = std::variant<CreateSession, Join, Act, Leave>;

/// Throws BadMessage for anything that is not a well-formed wire_v1 client
/// message, ConfigInvalid for a CreateSession whose config cannot be read.
ClientMessage parse_client_message(std::string_view text);

std::string encode(const ClientMessage& message);

enum class SessionStatus { Lobby, Playing, Finished };
std::string_view to_string(SessionStatus status);

struct ActionResult {
  std::optional<ErrorCode> error;
  bool accepted() const { return !error; }
  friend bool operator==(const ActionResult&, const ActionResult&) = default;
};

std::string lobby_message(const std::string& session, std::size_t players,
                          const std::vector<std::string>& seats, SessionStatus status);
std::string view_message(const std::string& session, const ViewState& view,
                         std::uint64_t version);
std::string action_result_message(const ActionResult& result);
std::string chain_final_message(const std::string& session, const Chain& chain);
std::string error_message(ErrorCode code, std::string_view message);

}  // namespace blocktrain::service
