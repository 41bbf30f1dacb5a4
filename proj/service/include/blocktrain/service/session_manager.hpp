#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blocktrain/ledger_file.hpp"
#include "blocktrain/rules.hpp"
#include "blocktrain/service/wire.hpp"

namespace blocktrain::service {

using ConnectionId = std::uint64_t;
using Clock = std::chrono::steady_clock;

/// Receives the encoded frames addressed to one connection. Called with the
/// manager's lock held, so it must not call back into the manager.
using Sink = std::function<void(const std::string&)>;

struct ManagerOptions {
  /// Finished chains are appended here.
  std::optional<std::filesystem::path> ledger;
  /// Action log used for crash recovery; see SessionManager::recover.
  std::optional<std::filesystem::path> journal;
  /// How long a disconnected seat's turn is held before a random legal
  /// move is played for it.
  std::chrono::milliseconds disconnect_timeout{30'000};
  /// Source of game seeds. Defaults to std::random_device.
  std::function<std::uint64_t()> seed_source;
  std::function<Clock::time_point()> clock;
};

struct SeatInfo {
  std::string name;
  bool connected = false;
};

/// Snapshot of one session.
struct SessionInfo {
  std::string id;
  GameConfig config;
  SessionStatus status = SessionStatus::Lobby;
  std::vector<SeatInfo> seats;
  std::uint64_t seed = 0;
  std::uint64_t version = 0;
  /// Set once the game has started.
  std::optional<GameState> state;
};

/// Owns every session. All mutations take one lock, so each session sees
/// its actions in a single total order.
class SessionManager {
 public:
  explicit SessionManager(ManagerOptions options = {});
  ~SessionManager();

  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  /// Rebuilds sessions from options.journal by replaying the recorded
  /// actions. Recovered seats start disconnected and can be reclaimed by
  /// joining under the same name.
  static std::unique_ptr<SessionManager> recover(ManagerOptions options);

  /// Throws ConfigInvalid.
  std::string create_session(const GameConfig& config);

  /// Seats `name` in the next free seat, or gives a disconnected seat with
  /// the same name back to its owner. Throws UnknownSession, SessionFull or
  /// SessionAlreadyPlaying.
  PlayerIndex join(const std::string& session, const std::string& name,
                   std::optional<ConnectionId> conn = std::nullopt);

  /// Never throws for engine errors; they come back in the result. Throws
  /// UnknownSession.
  ActionResult submit_action(const std::string& session, PlayerIndex seat,
                             const Action& action);

  void connect(ConnectionId conn, Sink sink);
  /// Drops the connection. A Lobby seat is freed; a Playing seat is kept
  /// for its owner and starts its disconnect timer.
  void disconnect(ConnectionId conn);
  /// Decodes and dispatches one wire_v1 frame. Replies go to the
  /// connection's sink.
  void handle_frame(ConnectionId conn, std::string_view text);

  /// Plays for disconnected seats whose timeout has expired. Returns the
  /// number of moves made.
  std::size_t tick();

  std::optional<SessionInfo> session(const std::string& id) const;
  std::vector<std::string> session_ids() const;

 private:
  struct Session;
  struct Connection;

  Session& find(const std::string& id);
  std::string create_locked(const GameConfig& config);
  PlayerIndex join_locked(Session& s, const std::string& name, std::optional<ConnectionId> conn);
  ActionResult submit_locked(Session& s, PlayerIndex seat, const Action& action,
                             std::optional<ConnectionId> reply_to);
  void start_game(Session& s, std::uint64_t seed);
  void finish_game(Session& s);
  void release_seat(ConnectionId conn);
  void send(ConnectionId conn, const std::string& frame);
  std::string lobby_frame(const Session& s) const;
  void broadcast_lobby(const Session& s);
  void broadcast_views(const Session& s);
  void send_view(const Session& s, PlayerIndex seat);
  void journal(const nlohmann::json& record);
  Clock::time_point now() const;

  ManagerOptions options_;
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<Session>> sessions_;
  std::map<ConnectionId, std::unique_ptr<Connection>> connections_;
  std::optional<LedgerWriter> ledger_;
  std::ofstream journal_;
};

}  // namespace blocktrain::service
