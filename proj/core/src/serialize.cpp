#include "blocktrain/serialize.hpp"

#include <cstdio>
#include <string>

#include "blocktrain/errors.hpp"

namespace blocktrain {

using nlohmann::json;

namespace {

std::string u64_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t u64_from_hex(const std::string& s) {
  if (s.size() != 16) throw Error(ErrorCode::MalformedState, "rng word must be 16 hex digits");
  return std::stoull(s, nullptr, 16);
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

void to_json(json& j, SupplyKind kind) { j = std::string(1, kind_code(kind)); }

void from_json(const json& j, SupplyKind& kind) {
  const auto& s = j.get_ref<const std::string&>();
  const auto parsed = s.size() == 1 ? kind_from_code(s[0]) : std::nullopt;
  if (!parsed) throw Error(ErrorCode::BadMessage, "unknown supply kind '" + s + "'");
  kind = *parsed;
}

void to_json(json& j, const SupplyCard& card) {
  j = json{{"id", card.id}, {"kind", card.kind}};
}

void from_json(const json& j, SupplyCard& card) {
  j.at("id").get_to(card.id);
  j.at("kind").get_to(card.kind);
}

void to_json(json& j, const ValidationCard& card) {
  j = json{{"id", card.id}, {"sequence", card.sequence}};
}

void from_json(const json& j, ValidationCard& card) {
  j.at("id").get_to(card.id);
  j.at("sequence").get_to(card.sequence);
}

void to_json(json& j, const WagonBoard& board) {
  j = json{{"index", board.index},
           {"required", board.required},
           {"filled", board.filled},
           {"status", std::string(to_string(board.status))},
           {"validated_by", optional_json(board.validated_by)},
           {"validation_card_id", optional_json(board.validation_card_id)}};
}

void from_json(const json& j, WagonBoard& board) {
  j.at("index").get_to(board.index);
  j.at("required").get_to(board.required);
  j.at("filled").get_to(board.filled);
  const auto status = j.at("status").get<std::string>();
  if (status == "Filling") {
    board.status = WagonStatus::Filling;
  } else if (status == "Validating") {
    board.status = WagonStatus::Validating;
  } else if (status == "Validated") {
    board.status = WagonStatus::Validated;
  } else {
    throw Error(ErrorCode::MalformedState, "unknown wagon status " + status);
  }
  board.validated_by = optional_from<PlayerIndex>(j.at("validated_by"));
  board.validation_card_id = optional_from<CardId>(j.at("validation_card_id"));
}

void to_json(json& j, const GameConfig& c) {
  j = json{{"players", c.players},
           {"slots_per_wagon", c.slots_per_wagon},
           {"target_wagons", c.target_wagons},
           {"wagon_set", c.wagon_set},
           {"supply_copies_per_kind", c.supply_copies_per_kind},
           {"validation_decoys", c.validation_decoys},
           {"open_hands", c.open_hands},
           {"immediate_validation_play", c.immediate_validation_play},
           {"supply_hand_size", GameConfig::supply_hand_size},
           {"validation_hand_size", GameConfig::validation_hand_size}};
}

void from_json(const json& j, GameConfig& c) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "config must be a JSON object");
  GameConfig d;
  c.players = j.value("players", d.players);
  c.slots_per_wagon = j.value("slots_per_wagon", d.slots_per_wagon);
  c.target_wagons = j.value("target_wagons", d.target_wagons);
  c.supply_copies_per_kind = j.value("supply_copies_per_kind", d.supply_copies_per_kind);
  c.validation_decoys = j.value("validation_decoys", d.validation_decoys);
  c.open_hands = j.value("open_hands", d.open_hands);
  c.immediate_validation_play =
      j.value("immediate_validation_play", d.immediate_validation_play);
  if (j.value("supply_hand_size", GameConfig::supply_hand_size) !=
          GameConfig::supply_hand_size ||
      j.value("validation_hand_size", GameConfig::validation_hand_size) !=
          GameConfig::validation_hand_size) {
    throw Error(ErrorCode::ConfigInvalid, "hand sizes are fixed at 4 supply + 1 validation");
  }
  if (j.contains("wagon_set")) {
    j.at("wagon_set").get_to(c.wagon_set);
  } else {
    c.wagon_set = generate_wagon_set(c.slots_per_wagon, c.target_wagons);
  }
}

void to_json(json& j, const Action& action) {
  j = json{{"type", std::string(action_name(action))}};
  if (const auto* a = std::get_if<PlaySupply>(&action)) j["card_id"] = a->card_id;
  if (const auto* a = std::get_if<PlayValidation>(&action)) j["card_id"] = a->card_id;
}

void from_json(const json& j, Action& action) {
  const auto type = j.at("type").get<std::string>();
  if (type == "PlaySupply") {
    action = PlaySupply{j.at("card_id").get<CardId>()};
  } else if (type == "DrawSupply") {
    action = DrawSupply{};
  } else if (type == "PlayValidation") {
    action = PlayValidation{j.at("card_id").get<CardId>()};
  } else if (type == "DrawValidation") {
    action = DrawValidation{};
  } else if (type == "Pass") {
    action = Pass{};
  } else {
    throw Error(ErrorCode::BadMessage, "unknown action type " + type);
  }
}

void to_json(json& j, const Block& b) {
  j = json{{"index", b.index},
           {"prev_hash", b.prev_hash},
           {"payload_sequence", b.payload_sequence},
           {"validation_card_id", b.validation_card_id},
           {"validator", b.validator},
           {"turn_count", b.turn_count},
           {"hash", b.hash}};
}

void from_json(const json& j, Block& b) {
  j.at("index").get_to(b.index);
  j.at("prev_hash").get_to(b.prev_hash);
  j.at("payload_sequence").get_to(b.payload_sequence);
  j.at("validation_card_id").get_to(b.validation_card_id);
  j.at("validator").get_to(b.validator);
  j.at("turn_count").get_to(b.turn_count);
  j.at("hash").get_to(b.hash);
}

void to_json(json& j, const Chain& chain) { j = chain.blocks; }

void from_json(const json& j, Chain& chain) { j.get_to(chain.blocks); }

void to_json(json& j, const ViewState& v) {
  json players = json::array();
  for (const auto& p : v.players) {
    json pj{{"index", p.index},
            {"supply_count", p.supply_count},
            {"validation_count", p.validation_count}};
    if (p.supply_hand) pj["supply_hand"] = *p.supply_hand;
    if (p.validation_hand) pj["validation_hand"] = *p.validation_hand;
    players.push_back(std::move(pj));
  }
  j = json{{"viewer", v.viewer},
           {"phase", std::string(to_string(v.phase))},
           {"current_wagon", v.current_wagon},
           {"target_wagons", v.target_wagons},
           {"boards", v.boards},
           {"players", std::move(players)},
           {"supply_pile_count", v.supply_pile_count},
           {"validation_pile_count", v.validation_pile_count},
           {"turn", v.turn},
           {"chain", v.chain},
           {"legal_actions", v.legal_actions}};
}

json state_to_json(const GameState& s) {
  json players = json::array();
  for (const auto& p : s.players) {
    players.push_back(json{{"index", p.index},
                           {"supply_hand", p.supply_hand},
                           {"validation_hand", p.validation_hand}});
  }
  json tallies = json::array();
  for (const auto& t : s.tallies) {
    tallies.push_back(json{{"fill_turns", t.fill_turns},
                           {"validation_turns", t.validation_turns}});
  }
  json events = json::array();
  for (const auto& e : s.event_log) {
    events.push_back(json{{"turn_number", e.turn_number},
                          {"player", e.player},
                          {"action", e.action}});
  }
  json rng = json::array();
  for (std::uint64_t word : s.rng.state()) rng.push_back(u64_hex(word));

  return json{{"version", kStateVersion},
              {"config", s.config},
              {"seed", s.seed},
              {"phase", std::string(to_string(s.phase))},
              {"current_wagon", s.current_wagon},
              {"boards", s.boards},
              {"players", std::move(players)},
              {"supply_pile", s.supply_pile},
              {"validation_pile", s.validation_pile},
              {"locked_cards", s.locked_cards},
              {"turn", s.turn},
              {"last_filler", optional_json(s.last_filler)},
              {"drawn_match_pending", s.drawn_match_pending},
              {"turn_number", s.turn_number},
              {"tallies", std::move(tallies)},
              {"chain", s.chain},
              {"rng_state", std::move(rng)},
              {"event_log", std::move(events)}};
}

GameState state_from_json(const json& j) {
  try {
    if (j.at("version").get<std::string>() != kStateVersion) {
      throw Error(ErrorCode::MalformedState, "unsupported state version");
    }
    GameState s;
    j.at("config").get_to(s.config);
    j.at("seed").get_to(s.seed);
    const auto phase = j.at("phase").get<std::string>();
    if (phase == "Fill") {
      s.phase = Phase::Fill;
    } else if (phase == "Validate") {
      s.phase = Phase::Validate;
    } else if (phase == "Finished") {
      s.phase = Phase::Finished;
    } else {
      throw Error(ErrorCode::MalformedState, "unknown phase " + phase);
    }
    j.at("current_wagon").get_to(s.current_wagon);
    j.at("boards").get_to(s.boards);
    for (const auto& pj : j.at("players")) {
      PlayerState p;
      pj.at("index").get_to(p.index);
      pj.at("supply_hand").get_to(p.supply_hand);
      pj.at("validation_hand").get_to(p.validation_hand);
      s.players.push_back(std::move(p));
    }
    j.at("supply_pile").get_to(s.supply_pile);
    j.at("validation_pile").get_to(s.validation_pile);
    j.at("locked_cards").get_to(s.locked_cards);
    j.at("turn").get_to(s.turn);
    s.last_filler = optional_from<PlayerIndex>(j.at("last_filler"));
    j.at("drawn_match_pending").get_to(s.drawn_match_pending);
    j.at("turn_number").get_to(s.turn_number);
    for (const auto& tj : j.at("tallies")) {
      s.tallies.push_back({tj.at("fill_turns").get<std::uint64_t>(),
                           tj.at("validation_turns").get<std::uint64_t>()});
    }
    j.at("chain").get_to(s.chain);
    Rng::State words{};
    const auto& rj = j.at("rng_state");
    if (rj.size() != words.size()) {
      throw Error(ErrorCode::MalformedState, "rng_state must hold 4 words");
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      words[i] = u64_from_hex(rj[i].get<std::string>());
    }
    s.rng = Rng::from_state(words);
    for (const auto& ej : j.at("event_log")) {
      s.event_log.push_back({ej.at("turn_number").get<std::uint64_t>(),
                             ej.at("player").get<PlayerIndex>(),
                             ej.at("action").get<Action>()});
    }
    return s;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedState) throw;
    throw Error(ErrorCode::MalformedState, e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::MalformedState, e.what());
  }
}

std::string canonical_state(const GameState& state) {
  return state_to_json(state).dump();
}

}  // namespace blocktrain
