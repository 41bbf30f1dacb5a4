#include "blocktrain/rules.hpp"

#include <algorithm>
#include <string>

#include "blocktrain/errors.hpp"

namespace blocktrain {
namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& why) {
  throw Error(code, why);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

bool sequence_matches(const WagonBoard& board, const ValidationCard& card) {
  return card.sequence == board.required;
}

// Gathers every card not frozen on a validated wagon, shuffles both decks and
// deals round-robin from the top, one card per player per pass.
void shuffle_and_deal(GameState& state) {
  std::vector<SupplyCard> supply = std::move(state.supply_pile);
  std::vector<ValidationCard> validation = std::move(state.validation_pile);
  for (auto& player : state.players) {
    supply.insert(supply.end(), player.supply_hand.begin(), player.supply_hand.end());
    validation.insert(validation.end(), player.validation_hand.begin(),
                      player.validation_hand.end());
    player.supply_hand.clear();
    player.validation_hand.clear();
  }
  std::sort(supply.begin(), supply.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(validation.begin(), validation.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  state.rng.shuffle(supply);
  state.rng.shuffle(validation);

  for (std::size_t round = 0; round < GameConfig::supply_hand_size; ++round) {
    for (auto& player : state.players) {
      player.supply_hand.push_back(supply.back());
      supply.pop_back();
    }
  }
  for (std::size_t round = 0; round < GameConfig::validation_hand_size; ++round) {
    for (auto& player : state.players) {
      player.validation_hand.push_back(std::move(validation.back()));
      validation.pop_back();
    }
  }
  state.supply_pile = std::move(supply);
  state.validation_pile = std::move(validation);
}

bool holds_playable_supply(const GameState& state, const PlayerState& player) {
  const auto next = state.boards[state.current_wagon].next_required();
  if (!next) return false;
  return std::any_of(player.supply_hand.begin(), player.supply_hand.end(),
                     [&](const SupplyCard& c) { return c.kind == *next; });
}

bool holds_matching_validation(const GameState& state, const PlayerState& player) {
  const WagonBoard& board = state.boards[state.current_wagon];
  return std::any_of(player.validation_hand.begin(), player.validation_hand.end(),
                     [&](const ValidationCard& c) { return sequence_matches(board, c); });
}

void advance_turn(GameState& state) {
  state.turn = static_cast<PlayerIndex>((state.turn + 1) % state.config.players);
  ++state.turn_number;
  state.drawn_match_pending = false;
}

void count_turn(GameState& state) {
  WagonTally& tally = state.tallies[state.current_wagon];
  if (state.phase == Phase::Fill) {
    ++tally.fill_turns;
  } else {
    ++tally.validation_turns;
  }
}

void play_supply(GameState& state, PlayerState& player, CardId card_id) {
  if (state.phase != Phase::Fill) {
    fail(ErrorCode::IllegalAction, "supply cards are only played while filling");
  }
  auto it = std::find_if(player.supply_hand.begin(), player.supply_hand.end(),
                         [&](const SupplyCard& c) { return c.id == card_id; });
  if (it == player.supply_hand.end()) {
    fail(ErrorCode::IllegalAction,
         "supply card " + std::to_string(card_id) + " is not in hand");
  }
  WagonBoard& board = state.boards[state.current_wagon];
  if (it->kind != *board.next_required()) {
    fail(ErrorCode::OutOfOrderFill,
         std::string("next slot needs ") + kind_code(*board.next_required()) +
             ", card is " + kind_code(it->kind));
  }
  count_turn(state);
  board.filled.push_back(*it);
  player.supply_hand.erase(it);
  state.last_filler = player.index;
  if (board.is_full()) {
    board.status = WagonStatus::Validating;
    state.phase = Phase::Validate;
    // The last filler opens the validation round with a fresh turn.
    state.turn = player.index;
    ++state.turn_number;
    state.drawn_match_pending = false;
  } else {
    advance_turn(state);
  }
}

void draw_supply(GameState& state, PlayerState& player) {
  if (state.phase != Phase::Fill) {
    fail(ErrorCode::IllegalAction, "supply draws only happen while filling");
  }
  if (holds_playable_supply(state, player)) {
    fail(ErrorCode::IllegalAction, "a supply card can be played; drawing is not allowed");
  }
  if (state.supply_pile.empty()) {
    fail(ErrorCode::IllegalAction, "supply pile is empty");
  }
  count_turn(state);
  player.supply_hand.push_back(state.supply_pile.back());
  state.supply_pile.pop_back();
  advance_turn(state);
}

void draw_validation(GameState& state, PlayerState& player) {
  if (state.phase != Phase::Validate) {
    fail(ErrorCode::IllegalAction, "validation draws only happen while validating");
  }
  if (state.drawn_match_pending || holds_matching_validation(state, player)) {
    fail(ErrorCode::IllegalAction, "a validation card can be played; drawing is not allowed");
  }
  if (state.validation_pile.empty()) {
    fail(ErrorCode::IllegalAction, "validation pile is empty");
  }
  count_turn(state);
  player.validation_hand.push_back(std::move(state.validation_pile.back()));
  state.validation_pile.pop_back();
  const bool matched =
      sequence_matches(state.boards[state.current_wagon], player.validation_hand.back());
  if (matched && state.config.immediate_validation_play) {
    state.drawn_match_pending = true;
  } else {
    advance_turn(state);
  }
}

void play_validation(GameState& state, PlayerState& player, CardId card_id) {
  if (state.phase == Phase::Fill) {
    fail(ErrorCode::WagonNotFull, "the wagon still has empty slots");
  }
  auto it = std::find_if(player.validation_hand.begin(), player.validation_hand.end(),
                         [&](const ValidationCard& c) { return c.id == card_id; });
  if (it == player.validation_hand.end()) {
    fail(ErrorCode::IllegalAction,
         "validation card " + std::to_string(card_id) + " is not in hand");
  }
  WagonBoard& board = state.boards[state.current_wagon];
  if (!sequence_matches(board, *it)) {
    fail(ErrorCode::InvalidValidation,
         "card shows " + sequence_to_string(it->sequence) + ", wagon holds " +
             sequence_to_string(board.filled_kinds()));
  }
  if (!state.drawn_match_pending) count_turn(state);
  state.drawn_match_pending = false;

  board.status = WagonStatus::Validated;
  board.validated_by = player.index;
  board.validation_card_id = it->id;
  for (const auto& card : board.filled) state.locked_cards.insert(card.id);
  state.locked_cards.insert(it->id);
  player.validation_hand.erase(it);

  const WagonTally& tally = state.tallies[state.current_wagon];
  state.chain.blocks.push_back(
      finalize_block(board, state.chain.tip_hash(), player.index, tally.total()));

  if (state.validated_count() == state.config.target_wagons) {
    state.phase = Phase::Finished;
    return;
  }
  ++state.current_wagon;
  state.phase = Phase::Fill;
  state.last_filler.reset();
  shuffle_and_deal(state);
  state.turn = player.index;
  advance_turn(state);
}

void pass_turn(GameState& state, PlayerState& player) {
  const auto legal = legal_actions(state, player.index);
  if (legal.size() != 1 || !std::holds_alternative<Pass>(legal.front())) {
    fail(ErrorCode::IllegalAction, "passing is only allowed when no move exists");
  }
  count_turn(state);
  advance_turn(state);
}

}  // namespace

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Fill: return "Fill";
    case Phase::Validate: return "Validate";
    case Phase::Finished: return "Finished";
  }
  return "?";
}

std::string_view action_name(const Action& action) {
  return std::visit(Overloaded{
                        [](const PlaySupply&) { return std::string_view("PlaySupply"); },
                        [](const DrawSupply&) { return std::string_view("DrawSupply"); },
                        [](const PlayValidation&) { return std::string_view("PlayValidation"); },
                        [](const DrawValidation&) { return std::string_view("DrawValidation"); },
                        [](const Pass&) { return std::string_view("Pass"); },
                    },
                    action);
}

std::size_t GameState::validated_count() const {
  return static_cast<std::size_t>(
      std::count_if(boards.begin(), boards.end(), [](const WagonBoard& b) {
        return b.status == WagonStatus::Validated;
      }));
}

GameState new_game(const GameConfig& config, std::uint64_t seed) {
  validate_config(config);
  GameState state;
  state.config = config;
  state.seed = seed;
  state.rng = Rng(seed);

  const std::size_t copies = config.supply_copies_per_kind;
  CardId next_id = 0;
  state.supply_pile.reserve(3 * copies);
  for (SupplyKind kind : kAllSupplyKinds) {
    for (std::size_t c = 0; c < copies; ++c) {
      state.supply_pile.push_back({next_id++, kind});
    }
  }
  for (const auto& seq : config.wagon_set) {
    state.validation_pile.push_back({next_id++, seq});
  }
  for (auto& seq : decoy_sequences(config)) {
    state.validation_pile.push_back({next_id++, std::move(seq)});
  }

  state.boards.reserve(config.target_wagons);
  for (std::size_t w = 0; w < config.target_wagons; ++w) {
    WagonBoard board;
    board.index = w;
    board.required = config.wagon_set[w];
    state.boards.push_back(std::move(board));
  }
  state.tallies.assign(config.target_wagons, WagonTally{});
  state.players.resize(config.players);
  for (std::size_t p = 0; p < config.players; ++p) {
    state.players[p].index = static_cast<PlayerIndex>(p);
  }
  shuffle_and_deal(state);
  return state;
}

std::vector<Action> legal_actions(const GameState& state, PlayerIndex player) {
  std::vector<Action> out;
  if (state.phase == Phase::Finished) return out;
  if (player != state.turn || player >= state.players.size()) return out;
  const PlayerState& me = state.players[player];
  const WagonBoard& board = state.boards[state.current_wagon];

  if (state.phase == Phase::Fill) {
    const SupplyKind next = *board.next_required();
    for (const auto& card : me.supply_hand) {
      if (card.kind == next) out.emplace_back(PlaySupply{card.id});
    }
    if (out.empty()) {
      if (!state.supply_pile.empty()) {
        out.emplace_back(DrawSupply{});
      } else {
        out.emplace_back(Pass{});
      }
    }
    return out;
  }

  for (const auto& card : me.validation_hand) {
    if (sequence_matches(board, card)) out.emplace_back(PlayValidation{card.id});
  }
  if (out.empty()) {
    if (!state.validation_pile.empty()) {
      out.emplace_back(DrawValidation{});
    } else {
      out.emplace_back(Pass{});
    }
  }
  return out;
}

void apply_action_in_place(GameState& state, PlayerIndex player,
                           const Action& action) {
  if (state.phase == Phase::Finished) {
    fail(ErrorCode::GameFinished, "the train has departed");
  }
  if (player >= state.players.size() || player != state.turn) {
    fail(ErrorCode::NotYourTurn, "it is player " + std::to_string(state.turn) +
                                     "'s turn, not " + std::to_string(player) + "'s");
  }
  // Every branch validates fully before its first write, so a throw leaves
  // the state untouched.
  const std::uint64_t turn_number = state.turn_number;
  PlayerState& me = state.players[player];
  std::visit(Overloaded{
                 [&](const PlaySupply& a) { play_supply(state, me, a.card_id); },
                 [&](const DrawSupply&) { draw_supply(state, me); },
                 [&](const PlayValidation& a) { play_validation(state, me, a.card_id); },
                 [&](const DrawValidation&) { draw_validation(state, me); },
                 [&](const Pass&) { pass_turn(state, me); },
             },
             action);
  state.event_log.push_back({turn_number, player, action});
}

GameState apply_action(const GameState& state, PlayerIndex player,
                       const Action& action) {
  GameState next = state;
  apply_action_in_place(next, player, action);
  return next;
}

bool is_terminal(const GameState& state) {
  return state.validated_count() == state.config.target_wagons;
}

bool matches_validation(const WagonBoard& board, const ValidationCard& card) {
  if (!board.is_full()) {
    fail(ErrorCode::WagonNotFull, "wagon " + std::to_string(board.index) +
                                      " has " + std::to_string(board.filled.size()) +
                                      " of " + std::to_string(board.required.size()) +
                                      " slots filled");
  }
  return sequence_matches(board, card);
}

GameState replay(const GameConfig& config, std::uint64_t seed,
                 const std::vector<std::pair<PlayerIndex, Action>>& actions) {
  GameState state = new_game(config, seed);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    try {
      apply_action_in_place(state, actions[i].first, actions[i].second);
    } catch (const Error& e) {
      fail(ErrorCode::ReplayDiverged,
           "action " + std::to_string(i) + " rejected (" + e.what() + ")");
    }
  }
  return state;
}

ViewState redacted_view(const GameState& state, PlayerIndex viewer) {
  if (viewer >= state.players.size()) {
    fail(ErrorCode::UnknownPlayer, "no player " + std::to_string(viewer));
  }
  ViewState view;
  view.viewer = viewer;
  view.phase = state.phase;
  view.current_wagon = state.current_wagon;
  view.target_wagons = state.config.target_wagons;
  view.boards = state.boards;
  view.supply_pile_count = state.supply_pile.size();
  view.validation_pile_count = state.validation_pile.size();
  view.turn = state.turn;
  view.chain = state.chain;
  for (const auto& player : state.players) {
    PlayerView pv;
    pv.index = player.index;
    pv.supply_count = player.supply_hand.size();
    pv.validation_count = player.validation_hand.size();
    if (state.config.open_hands || player.index == viewer) {
      pv.supply_hand = player.supply_hand;
      pv.validation_hand = player.validation_hand;
    }
    view.players.push_back(std::move(pv));
  }
  view.legal_actions = legal_actions(state, viewer);
  return view;
}

}  // namespace blocktrain
