#include "blocktrain/service/session_manager.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <random>

#include "blocktrain/serialize.hpp"
#include "blocktrain/sim.hpp"

namespace blocktrain::service {

using nlohmann::json;

struct SessionManager::Session {
  struct Seat {
    std::string name;
    std::optional<ConnectionId> conn;
    Clock::time_point since{};
  };

  std::string id;
  GameConfig config;
  SessionStatus status = SessionStatus::Lobby;
  std::vector<Seat> seats;
  std::uint64_t seed = 0;
  std::uint64_t version = 0;
  std::optional<GameState> state;
  Rng bot_rng;
  Clock::time_point turn_started{};
};

struct SessionManager::Connection {
  Sink sink;
  std::optional<std::pair<std::string, PlayerIndex>> seat;
};

namespace {

std::string random_session_id() {
  std::random_device rd;
  std::string id;
  for (int i = 0; i < 4; ++i) {
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(rd()));
    id += buf;
  }
  return id;
}

std::uint64_t random_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

SessionManager::SessionManager(ManagerOptions options) : options_(std::move(options)) {
  if (!options_.seed_source) options_.seed_source = random_seed;
  if (!options_.clock) options_.clock = [] { return Clock::now(); };
  if (options_.ledger) ledger_.emplace(*options_.ledger);
  if (options_.journal) {
    journal_.open(*options_.journal, std::ios::binary | std::ios::app);
    if (!journal_) {
      throw std::runtime_error("cannot open journal " + options_.journal->string());
    }
  }
}

SessionManager::~SessionManager() = default;

Clock::time_point SessionManager::now() const { return options_.clock(); }

void SessionManager::journal(const json& record) {
  if (!journal_.is_open()) return;
  const std::string line = record.dump() + '\n';
  journal_.write(line.data(), static_cast<std::streamsize>(line.size()));
  journal_.flush();
}

SessionManager::Session& SessionManager::find(const std::string& id) {
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session " + id);
  return *it->second;
}

std::string SessionManager::create_session(const GameConfig& config) {
  std::lock_guard lock(mu_);
  return create_locked(config);
}

std::string SessionManager::create_locked(const GameConfig& config) {
  validate_config(config);
  auto session = std::make_unique<Session>();
  session->id = random_session_id();
  session->config = config;
  const std::string id = session->id;
  sessions_.emplace(id, std::move(session));
  journal(json{{"event", "create"}, {"session", id}, {"config", config}});
  spdlog::info("session {} created for {} players", id, config.players);
  return id;
}

PlayerIndex SessionManager::join(const std::string& session, const std::string& name,
                                 std::optional<ConnectionId> conn) {
  std::lock_guard lock(mu_);
  return join_locked(find(session), name, conn);
}

PlayerIndex SessionManager::join_locked(Session& s, const std::string& name,
                                        std::optional<ConnectionId> conn) {
  if (name.empty()) throw Error(ErrorCode::BadMessage, "name must not be empty");
  const auto by_name = std::find_if(s.seats.begin(), s.seats.end(),
                                    [&](const Session::Seat& seat) { return seat.name == name; });

  if (s.status != SessionStatus::Lobby) {
    const bool any_free = std::any_of(s.seats.begin(), s.seats.end(),
                                      [](const Session::Seat& seat) { return !seat.conn; });
    if (!any_free) throw Error(ErrorCode::SessionFull, "all seats are taken");
    if (by_name == s.seats.end() || by_name->conn) {
      throw Error(ErrorCode::SessionAlreadyPlaying, "game in progress");
    }
    const auto seat = static_cast<PlayerIndex>(by_name - s.seats.begin());
    by_name->conn = conn;
    if (conn) connections_.at(*conn)->seat = {s.id, seat};
    spdlog::info("session {}: {} reclaimed seat {}", s.id, name, seat);
    if (conn) {
      send(*conn, lobby_frame(s));
      send_view(s, seat);
      if (s.status == SessionStatus::Finished) send(*conn, chain_final_message(s.id, s.state->chain));
    }
    return seat;
  }

  if (by_name != s.seats.end()) throw Error(ErrorCode::BadMessage, "name already seated");
  if (s.seats.size() >= s.config.players) throw Error(ErrorCode::SessionFull, "all seats are taken");
  const auto seat = static_cast<PlayerIndex>(s.seats.size());
  s.seats.push_back({name, conn, now()});
  if (conn) connections_.at(*conn)->seat = {s.id, seat};
  spdlog::info("session {}: {} took seat {}", s.id, name, seat);
  broadcast_lobby(s);
  if (s.seats.size() == s.config.players) start_game(s, options_.seed_source());
  return seat;
}

void SessionManager::start_game(Session& s, std::uint64_t seed) {
  s.seed = seed;
  s.state = new_game(s.config, seed);
  s.bot_rng = Rng(derive_seed(seed, 1));
  s.status = SessionStatus::Playing;
  s.version = 1;
  s.turn_started = now();
  json names = json::array();
  for (const auto& seat : s.seats) names.push_back(seat.name);
  journal(json{{"event", "start"}, {"session", s.id}, {"seed", seed}, {"seats", names}});
  spdlog::info("session {} started with seed {}", s.id, seed);
  broadcast_lobby(s);
  broadcast_views(s);
}

ActionResult SessionManager::submit_action(const std::string& session, PlayerIndex seat,
                                           const Action& action) {
  std::lock_guard lock(mu_);
  return submit_locked(find(session), seat, action, std::nullopt);
}

ActionResult SessionManager::submit_locked(Session& s, PlayerIndex seat, const Action& action,
                                           std::optional<ConnectionId> reply_to) {
  ActionResult result;
  if (s.status == SessionStatus::Lobby) {
    result.error = ErrorCode::SessionNotPlaying;
  } else {
    try {
      apply_action_in_place(*s.state, seat, action);
    } catch (const Error& e) {
      result.error = e.code();
    }
  }
  if (reply_to) send(*reply_to, action_result_message(result));
  if (!result.accepted()) {
    spdlog::debug("session {}: seat {} {} rejected ({})", s.id, seat, action_name(action),
                  to_string(*result.error));
    return result;
  }

  journal(json{{"event", "act"}, {"session", s.id}, {"seat", seat}, {"action", action}});
  ++s.version;
  s.turn_started = now();
  spdlog::debug("session {} v{}: seat {} {}", s.id, s.version, seat, action_name(action));
  broadcast_views(s);
  if (is_terminal(*s.state)) finish_game(s);
  return result;
}

void SessionManager::finish_game(Session& s) {
  s.status = SessionStatus::Finished;
  const std::string frame = chain_final_message(s.id, s.state->chain);
  for (const auto& seat : s.seats) {
    if (seat.conn) send(*seat.conn, frame);
  }
  if (ledger_) {
    try {
      ledger_->append(s.state->chain);
      journal(json{{"event", "persisted"}, {"session", s.id}});
    } catch (const std::exception& e) {
      spdlog::error("session {}: ledger append failed: {}", s.id, e.what());
    }
  }
  spdlog::info("session {} finished, tip {}", s.id, s.state->chain.tip_hash());
}

void SessionManager::connect(ConnectionId conn, Sink sink) {
  std::lock_guard lock(mu_);
  auto c = std::make_unique<Connection>();
  c->sink = std::move(sink);
  connections_[conn] = std::move(c);
}

void SessionManager::disconnect(ConnectionId conn) {
  std::lock_guard lock(mu_);
  release_seat(conn);
  connections_.erase(conn);
}

void SessionManager::release_seat(ConnectionId conn) {
  const auto it = connections_.find(conn);
  if (it == connections_.end() || !it->second->seat) return;
  const auto [id, seat] = *it->second->seat;
  it->second->seat.reset();
  const auto sit = sessions_.find(id);
  if (sit == sessions_.end()) return;
  Session& s = *sit->second;

  if (s.status == SessionStatus::Lobby) {
    s.seats.erase(s.seats.begin() + seat);
    for (PlayerIndex i = seat; i < s.seats.size(); ++i) {
      if (s.seats[i].conn) connections_.at(*s.seats[i].conn)->seat = {id, i};
    }
    spdlog::info("session {}: seat {} left the lobby", id, seat);
    broadcast_lobby(s);
    return;
  }
  s.seats[seat].conn.reset();
  s.seats[seat].since = now();
  spdlog::info("session {}: seat {} disconnected", id, seat);
}

std::size_t SessionManager::tick() {
  std::lock_guard lock(mu_);
  std::size_t moves = 0;
  const auto t = now();
  for (auto& [id, sp] : sessions_) {
    Session& s = *sp;
    while (s.status == SessionStatus::Playing) {
      const PlayerIndex seat = s.state->turn;
      const auto& owner = s.seats[seat];
      if (owner.conn) break;
      if (t < std::max(owner.since, s.turn_started) + options_.disconnect_timeout) break;
      const Action action = Policy::uniform_random().choose(*s.state, s.bot_rng);
      spdlog::info("session {}: auto-playing {} for disconnected seat {}", id,
                   action_name(action), seat);
      submit_locked(s, seat, action, std::nullopt);
      ++moves;
    }
  }
  return moves;
}

void SessionManager::handle_frame(ConnectionId conn, std::string_view text) {
  std::lock_guard lock(mu_);
  const auto cit = connections_.find(conn);
  if (cit == connections_.end()) return;
  Connection& c = *cit->second;
  try {
    const ClientMessage message = parse_client_message(text);
    std::visit(Overloaded{
                   [&](const CreateSession& m) {
                     const std::string id = create_locked(m.config);
                     send(conn, lobby_message(id, m.config.players, {}, SessionStatus::Lobby));
                   },
                   [&](const Join& m) {
                     if (c.seat) throw Error(ErrorCode::BadMessage, "already seated");
                     join_locked(find(m.session), m.name, conn);
                   },
                   [&](const Act& m) {
                     if (!c.seat) throw Error(ErrorCode::BadMessage, "join a session first");
                     const auto [id, seat] = *c.seat;
                     submit_locked(find(id), seat, m.action, conn);
                   },
                   [&](const Leave&) { release_seat(conn); },
               },
               message);
  } catch (const Error& e) {
    send(conn, error_message(e.code(), e.what()));
  }
}

void SessionManager::send(ConnectionId conn, const std::string& frame) {
  const auto it = connections_.find(conn);
  if (it != connections_.end() && it->second->sink) it->second->sink(frame);
}

std::string SessionManager::lobby_frame(const Session& s) const {
  std::vector<std::string> names;
  for (const auto& seat : s.seats) names.push_back(seat.name);
  return lobby_message(s.id, s.config.players, names, s.status);
}

void SessionManager::broadcast_lobby(const Session& s) {
  const std::string frame = lobby_frame(s);
  for (const auto& seat : s.seats) {
    if (seat.conn) send(*seat.conn, frame);
  }
}

void SessionManager::broadcast_views(const Session& s) {
  for (PlayerIndex i = 0; i < s.seats.size(); ++i) {
    if (s.seats[i].conn) send_view(s, i);
  }
}

void SessionManager::send_view(const Session& s, PlayerIndex seat) {
  if (!s.state || !s.seats[seat].conn) return;
  send(*s.seats[seat].conn, view_message(s.id, redacted_view(*s.state, seat), s.version));
}

std::optional<SessionInfo> SessionManager::session(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) return std::nullopt;
  const Session& s = *it->second;
  SessionInfo info{s.id, s.config, s.status, {}, s.seed, s.version, s.state};
  for (const auto& seat : s.seats) info.seats.push_back({seat.name, seat.conn.has_value()});
  return info;
}

std::vector<std::string> SessionManager::session_ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, s] : sessions_) ids.push_back(id);
  return ids;
}

std::unique_ptr<SessionManager> SessionManager::recover(ManagerOptions options) {
  if (!options.journal) throw std::invalid_argument("recover needs a journal path");

  struct Pending {
    std::vector<std::pair<PlayerIndex, Action>> actions;
    bool persisted = false;
  };
  std::vector<std::string> order;
  std::map<std::string, std::unique_ptr<Session>> sessions;
  std::map<std::string, Pending> pending;

  std::vector<std::string> lines;
  {
    std::ifstream in(*options.journal, std::ios::binary);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
  }
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (lines[n].empty()) continue;
    const json record = json::parse(lines[n], nullptr, false);
    if (record.is_discarded()) {
      // A crash can leave the final line half written.
      if (n + 1 == lines.size()) break;
      throw Error(ErrorCode::MalformedState, "journal line " + std::to_string(n + 1));
    }
    try {
      const auto event = record.at("event").get<std::string>();
      const auto id = record.at("session").get<std::string>();
      if (event == "create") {
        auto s = std::make_unique<Session>();
        s->id = id;
        s->config = record.at("config").get<GameConfig>();
        sessions[id] = std::move(s);
        order.push_back(id);
        continue;
      }
      Session& s = *sessions.at(id);
      if (event == "start") {
        s.seed = record.at("seed").get<std::uint64_t>();
        s.seats.clear();
        for (const auto& name : record.at("seats")) s.seats.push_back({name.get<std::string>(), {}, {}});
        s.status = SessionStatus::Playing;
      } else if (event == "act") {
        pending[id].actions.emplace_back(record.at("seat").get<PlayerIndex>(),
                                         record.at("action").get<Action>());
      } else if (event == "persisted") {
        pending[id].persisted = true;
      }
    } catch (const std::exception& e) {
      throw Error(ErrorCode::MalformedState,
                  "journal line " + std::to_string(n + 1) + ": " + e.what());
    }
  }

  auto manager = std::make_unique<SessionManager>(std::move(options));
  const auto t = manager->now();
  for (const auto& id : order) {
    auto s = std::move(sessions.at(id));
    if (s->status == SessionStatus::Playing) {
      const Pending& p = pending[id];
      s->state = replay(s->config, s->seed, p.actions);
      s->bot_rng = Rng(derive_seed(s->seed, 1));
      s->version = 1 + p.actions.size();
      s->turn_started = t;
      for (auto& seat : s->seats) seat.since = t;
      if (is_terminal(*s->state)) {
        s->status = SessionStatus::Finished;
        if (!p.persisted && manager->ledger_) {
          manager->ledger_->append(s->state->chain);
          manager->journal(json{{"event", "persisted"}, {"session", id}});
        }
      }
    } else {
      // Lobby seats belong to live connections, which did not survive.
      s->seats.clear();
    }
    spdlog::info("recovered session {} ({})", id, to_string(s->status));
    manager->sessions_.emplace(id, std::move(s));
  }
  return manager;
}

}  // namespace blocktrain::service
