#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "blocktrain/chain.hpp"
#include "blocktrain/config.hpp"
#include "blocktrain/rng.hpp"
#include "blocktrain/types.hpp"

namespace blocktrain {

enum class Phase : std::uint8_t { Fill, Validate, Finished };

std::string_view to_string(Phase phase);

struct PlaySupply {
  CardId card_id;
  friend bool operator==(const PlaySupply&, const PlaySupply&) = default;
};
struct DrawSupply {
  friend bool operator==(const DrawSupply&, const DrawSupply&) = default;
};
struct PlayValidation {
  CardId card_id;
  friend bool operator==(const PlayValidation&, const PlayValidation&) = default;
};
struct DrawValidation {
  friend bool operator==(const DrawValidation&, const DrawValidation&) = default;
};
struct Pass {
  friend bool operator==(const Pass&, const Pass&) = default;
};

using Action =
    std::variant<PlaySupply, DrawSupply, PlayValidation, DrawValidation, Pass>;

std::string_view action_name(const Action& action);

struct PlayerState {
  PlayerIndex index = 0;
  std::vector<SupplyCard> supply_hand;
  std::vector<ValidationCard> validation_hand;

  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

struct Event {
  std::uint64_t turn_number = 0;
  PlayerIndex player = 0;
  Action action;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Turns spent on one wagon. A validation card drawn and played in the same
/// turn counts once.
struct WagonTally {
  std::uint64_t fill_turns = 0;
  std::uint64_t validation_turns = 0;

  std::uint64_t total() const { return fill_turns + validation_turns; }

  friend bool operator==(const WagonTally&, const WagonTally&) = default;
};

/// Authoritative game state. A plain value: copy freely, compare with ==.
///
/// Piles are ordered bottom to top; the top card is back().
struct GameState {
  GameConfig config;
  std::uint64_t seed = 0;
  Phase phase = Phase::Fill;
  std::size_t current_wagon = 0;
  std::vector<WagonBoard> boards;
  std::vector<PlayerState> players;
  std::vector<SupplyCard> supply_pile;
  std::vector<ValidationCard> validation_pile;
  std::set<CardId> locked_cards;
  PlayerIndex turn = 0;
  std::optional<PlayerIndex> last_filler;
  /// Set when the current player drew the matching validation card this turn
  /// and may still play it before the turn ends.
  bool drawn_match_pending = false;
  /// Number of turns started so far; the turn in progress has this index.
  std::uint64_t turn_number = 0;
  std::vector<WagonTally> tallies;
  Chain chain;
  Rng rng;
  std::vector<Event> event_log;

  std::size_t validated_count() const;

  friend bool operator==(const GameState&, const GameState&) = default;
};

/// Builds and shuffles both decks and deals 4 supply + 1 validation card to
/// every player. Supply card ids are 0..3C-1 (C copies per kind, grouped by
/// kind); validation ids follow, first the correct card of each wagon in
/// wagon_set order, then the decoys. Throws ConfigInvalid.
GameState new_game(const GameConfig& config, std::uint64_t seed);

/// Moves available to `player`. Empty when it is not their turn or the game
/// is over. A possible play always excludes drawing; Pass appears only when
/// nothing else can be done.
std::vector<Action> legal_actions(const GameState& state, PlayerIndex player);

/// Successor state after `player` performs `action`. The input is untouched.
/// Throws GameFinished, NotYourTurn, IllegalAction, OutOfOrderFill,
/// InvalidValidation or WagonNotFull.
GameState apply_action(const GameState& state, PlayerIndex player,
                       const Action& action);

/// In-place variant of apply_action with the same checks. On error the state
/// is left unchanged.
void apply_action_in_place(GameState& state, PlayerIndex player,
                           const Action& action);

bool is_terminal(const GameState& state);

/// Throws WagonNotFull if the board is not complete.
bool matches_validation(const WagonBoard& board, const ValidationCard& card);

/// Replays a recorded move list from a fresh deal. Throws ReplayDiverged
/// (carrying the failing position) when any move is rejected.
GameState replay(const GameConfig& config, std::uint64_t seed,
                 const std::vector<std::pair<PlayerIndex, Action>>& actions);

struct PlayerView {
  PlayerIndex index = 0;
  std::size_t supply_count = 0;
  std::size_t validation_count = 0;
  /// Present for the viewer, and for everyone when hands are open.
  std::optional<std::vector<SupplyCard>> supply_hand;
  std::optional<std::vector<ValidationCard>> validation_hand;

  friend bool operator==(const PlayerView&, const PlayerView&) = default;
};

/// What one seat is allowed to see.
struct ViewState {
  PlayerIndex viewer = 0;
  Phase phase = Phase::Fill;
  std::size_t current_wagon = 0;
  std::size_t target_wagons = 0;
  std::vector<WagonBoard> boards;
  std::vector<PlayerView> players;
  std::size_t supply_pile_count = 0;
  std::size_t validation_pile_count = 0;
  PlayerIndex turn = 0;
  Chain chain;
  std::vector<Action> legal_actions;

  friend bool operator==(const ViewState&, const ViewState&) = default;
};

/// Throws UnknownPlayer.
ViewState redacted_view(const GameState& state, PlayerIndex viewer);

}  // namespace blocktrain
