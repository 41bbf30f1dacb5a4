#include <gtest/gtest.h>

#include <algorithm>

#include "blocktrain/errors.hpp"
#include "blocktrain/rules.hpp"
#include "blocktrain/serialize.hpp"
#include "builders.hpp"
#include "invariants.hpp"

namespace blocktrain {
namespace {

using testing::action_list;
using testing::play_until;
using testing::prefill;
using testing::set_supply_hand;

constexpr auto W = SupplyKind::Water;
constexpr auto F = SupplyKind::Food;
constexpr auto M = SupplyKind::Medicine;

ErrorCode error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::BadMessage;
}

GameConfig two_player_config() {
  GameConfig config = GameConfig::standard(2);
  config.wagon_set = {{W, F, M, W}, {F, M, W, F}, {M, W, F, M}, {W, M, F, F}, {F, W, M, M}};
  return config;
}

TEST(NewGameTest, FivePlayersEachHoldFourSupplyAndOneValidation) {
  const GameState state = new_game(GameConfig::standard(5), 42);
  ASSERT_EQ(state.players.size(), 5u);
  for (const auto& p : state.players) {
    EXPECT_EQ(p.supply_hand.size(), 4u);
    EXPECT_EQ(p.validation_hand.size(), 1u);
  }
  EXPECT_EQ(state.phase, Phase::Fill);
  EXPECT_EQ(state.current_wagon, 0u);
  EXPECT_EQ(state.turn, 0u);
  EXPECT_EQ(state.supply_pile.size(), 60u - 20u);
  EXPECT_EQ(state.validation_pile.size(), 15u - 5u);
}

TEST(NewGameTest, SixPlayersIsConfigInvalid) {
  EXPECT_EQ(error_of([] { new_game(GameConfig::standard(6), 1); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(error_of([] { new_game(GameConfig::standard(1), 1); }), ErrorCode::ConfigInvalid);
}

TEST(NewGameTest, SameSeedIsBitIdentical) {
  const auto a = new_game(GameConfig::standard(4), 7);
  const auto b = new_game(GameConfig::standard(4), 7);
  EXPECT_EQ(a, b);
  EXPECT_EQ(canonical_state(a), canonical_state(b));
  EXPECT_NE(canonical_state(a), canonical_state(new_game(GameConfig::standard(4), 8)));
}

TEST(NewGameTest, ExactlyOneMatchingValidationCardPerWagon) {
  const GameState state = new_game(GameConfig::standard(3), 5);
  std::vector<ValidationCard> all = state.validation_pile;
  for (const auto& p : state.players) {
    all.insert(all.end(), p.validation_hand.begin(), p.validation_hand.end());
  }
  for (const auto& board : state.boards) {
    EXPECT_EQ(std::count_if(all.begin(), all.end(),
                            [&](const ValidationCard& c) { return c.sequence == board.required; }),
              1);
  }
}

TEST(LegalActionsTest, MatchingWaterCardMustBePlayed) {
  GameState state = new_game(two_player_config(), 3);
  set_supply_hand(state, 0, {W, F, F, M});
  const auto legal = legal_actions(state, 0);
  ASSERT_EQ(legal.size(), 1u);
  EXPECT_EQ(legal[0], Action(PlaySupply{state.players[0].supply_hand[0].id}));
}

TEST(LegalActionsTest, FinishedGameHasNoActions) {
  GameState state = play_until(new_game(two_player_config(), 11), 1,
                               [](const GameState&) { return false; });
  ASSERT_EQ(state.phase, Phase::Finished);
  EXPECT_TRUE(legal_actions(state, state.turn).empty());
}

TEST(LegalActionsTest, NotYourTurnIsEmpty) {
  const GameState state = new_game(two_player_config(), 3);
  EXPECT_TRUE(legal_actions(state, 1).empty());
  EXPECT_TRUE(legal_actions(state, 7).empty());
}

// Enumerates every 4-card hand against every next-slot kind, with the pile
// full or empty, and compares with a direct reading of the hand.
TEST(LegalActionsTest, FillRuleTableMatchesHandEvaluation) {
  const GameState base = new_game(two_player_config(), 9);
  std::size_t cases = 0;
  for (std::size_t prefilled = 0; prefilled < 3; ++prefilled) {
    for (int code = 0; code < 81; ++code) {
      Sequence hand;
      for (int c = code, i = 0; i < 4; ++i, c /= 3) hand.push_back(kAllSupplyKinds[c % 3]);
      for (bool empty_pile : {false, true}) {
        GameState state = base;
        prefill(state, prefilled);
        set_supply_hand(state, 0, hand);
        if (empty_pile) {
          // Park the pile on player 1 so no card leaves the game.
          auto& other = state.players[1].supply_hand;
          other.insert(other.end(), state.supply_pile.begin(), state.supply_pile.end());
          state.supply_pile.clear();
        }
        const SupplyKind next = state.boards[0].required[prefilled];
        std::vector<Action> expected;
        for (const auto& card : state.players[0].supply_hand) {
          if (card.kind == next) expected.emplace_back(PlaySupply{card.id});
        }
        if (expected.empty()) {
          expected.emplace_back(empty_pile ? Action(Pass{}) : Action(DrawSupply{}));
        }
        EXPECT_EQ(legal_actions(state, 0), expected);
        ++cases;
      }
    }
  }
  EXPECT_EQ(cases, 3u * 81u * 2u);
}

TEST(ApplyActionTest, CompletingLastSlotStartsValidationWithSamePlayer) {
  GameState state = new_game(two_player_config(), 4);
  prefill(state, 3);
  state.turn = 1;
  set_supply_hand(state, 1, {W, F, F, F});
  const GameState before = state;
  const GameState next = apply_action(state, 1, PlaySupply{state.players[1].supply_hand[0].id});
  EXPECT_EQ(state, before) << "input must not change";
  EXPECT_EQ(next.phase, Phase::Validate);
  EXPECT_EQ(next.turn, 1u);
  EXPECT_EQ(next.last_filler, 1u);
  EXPECT_EQ(next.boards[0].status, WagonStatus::Validating);
  EXPECT_EQ(next.event_log.size(), 1u);
}

TEST(ApplyActionTest, PlayingWrongKindIsOutOfOrderFill) {
  GameState state = new_game(two_player_config(), 4);
  set_supply_hand(state, 0, {F, F, M, W});
  const CardId food = state.players[0].supply_hand[0].id;
  EXPECT_EQ(error_of([&] { apply_action(state, 0, PlaySupply{food}); }), ErrorCode::OutOfOrderFill);
}

TEST(ApplyActionTest, ErrorPaths) {
  GameState state = new_game(two_player_config(), 4);
  set_supply_hand(state, 0, {W, F, F, M});
  const GameState before = state;

  EXPECT_EQ(error_of([&] { apply_action_in_place(state, 1, DrawSupply{}); }), ErrorCode::NotYourTurn);
  EXPECT_EQ(error_of([&] { apply_action_in_place(state, 9, DrawSupply{}); }), ErrorCode::NotYourTurn);
  EXPECT_EQ(error_of([&] { apply_action_in_place(state, 0, DrawSupply{}); }), ErrorCode::IllegalAction);
  EXPECT_EQ(error_of([&] { apply_action_in_place(state, 0, Pass{}); }), ErrorCode::IllegalAction);
  EXPECT_EQ(error_of([&] { apply_action_in_place(state, 0, PlaySupply{99999}); }), ErrorCode::IllegalAction);
  EXPECT_EQ(error_of([&] { apply_action_in_place(state, 0, DrawValidation{}); }), ErrorCode::IllegalAction);
  const CardId vcard = state.players[0].validation_hand[0].id;
  EXPECT_EQ(error_of([&] { apply_action_in_place(state, 0, PlayValidation{vcard}); }), ErrorCode::WagonNotFull);
  EXPECT_EQ(state, before) << "rejected actions must leave the state unchanged";
}

TEST(ApplyActionTest, DrawnSupplyCardIsNotPlayableThisTurn) {
  GameState state = new_game(two_player_config(), 4);
  set_supply_hand(state, 0, {F, F, M, M});
  // Make sure the top of the pile is a Water card.
  auto it = std::find_if(state.supply_pile.begin(), state.supply_pile.end(),
                         [](const SupplyCard& c) { return c.kind == SupplyKind::Water; });
  std::iter_swap(it, state.supply_pile.end() - 1);
  const GameState next = apply_action(state, 0, DrawSupply{});
  EXPECT_EQ(next.turn, 1u);
  EXPECT_EQ(next.players[0].supply_hand.size(), 5u);
  EXPECT_EQ(next.players[0].supply_hand.back().kind, SupplyKind::Water);
}

GameState reach_validation(const GameConfig& config, std::uint64_t seed) {
  return play_until(new_game(config, seed), seed,
                    [](const GameState& s) { return s.phase == Phase::Validate; });
}

TEST(ApplyActionTest, WrongValidationCardIsInvalidValidation) {
  GameState state = reach_validation(two_player_config(), 21);
  auto& hand = state.players[state.turn].validation_hand;
  const auto& required = state.boards[state.current_wagon].required;
  // Swap a decoy into the hand from the pile if needed.
  if (hand[0].sequence == required) std::swap(hand[0], state.validation_pile.front());
  EXPECT_EQ(error_of([&] { apply_action(state, state.turn, PlayValidation{hand[0].id}); }),
            ErrorCode::InvalidValidation);
  EXPECT_EQ(error_of([&] { apply_action(state, state.turn, PlaySupply{0}); }),
            ErrorCode::IllegalAction);
}

// Puts the matching validation card on top of the pile and a decoy in the
// current player's hand.
GameState with_match_on_top(GameConfig config, std::uint64_t seed) {
  GameState state = reach_validation(config, seed);
  const auto& required = state.boards[state.current_wagon].required;
  auto is_match = [&](const ValidationCard& c) { return c.sequence == required; };
  for (auto& p : state.players) {
    auto it = std::find_if(p.validation_hand.begin(), p.validation_hand.end(), is_match);
    if (it != p.validation_hand.end()) {
      std::swap(*it, state.validation_pile.front());
    }
  }
  auto it = std::find_if(state.validation_pile.begin(), state.validation_pile.end(), is_match);
  std::iter_swap(it, state.validation_pile.end() - 1);
  return state;
}

TEST(ApplyActionTest, ImmediateValidationKeepsTurnAfterMatchingDraw) {
  GameState state = with_match_on_top(two_player_config(), 31);
  const PlayerIndex actor = state.turn;
  ASSERT_EQ(legal_actions(state, actor), std::vector<Action>{DrawValidation{}});
  state = apply_action(state, actor, DrawValidation{});
  EXPECT_EQ(state.turn, actor);
  EXPECT_TRUE(state.drawn_match_pending);
  const auto legal = legal_actions(state, actor);
  ASSERT_EQ(legal.size(), 1u);
  ASSERT_TRUE(std::holds_alternative<PlayValidation>(legal[0]));
  const auto validation_turns_before = state.tallies[0].validation_turns;
  state = apply_action(state, actor, legal[0]);
  EXPECT_EQ(state.boards[0].status, WagonStatus::Validated);
  EXPECT_EQ(state.tallies[0].validation_turns, validation_turns_before)
      << "draw and play in one turn count once";
}

TEST(ApplyActionTest, DeferredValidationAdvancesTurnAfterMatchingDraw) {
  GameConfig config = two_player_config();
  config.immediate_validation_play = false;
  GameState state = with_match_on_top(config, 31);
  const PlayerIndex actor = state.turn;
  state = apply_action(state, actor, DrawValidation{});
  EXPECT_EQ(state.turn, (actor + 1) % 2);
  EXPECT_FALSE(state.drawn_match_pending);
}

TEST(ApplyActionTest, ValidationLocksWagonAndRedeals) {
  GameState state = with_match_on_top(two_player_config(), 17);
  const PlayerIndex actor = state.turn;
  state = apply_action(state, actor, DrawValidation{});
  state = apply_action(state, actor, legal_actions(state, actor)[0]);

  const WagonBoard& done = state.boards[0];
  EXPECT_EQ(done.status, WagonStatus::Validated);
  EXPECT_EQ(done.validated_by, actor);
  ASSERT_TRUE(done.validation_card_id);
  EXPECT_EQ(state.locked_cards.size(), 5u);
  EXPECT_EQ(state.phase, Phase::Fill);
  EXPECT_EQ(state.current_wagon, 1u);
  EXPECT_EQ(state.turn, (actor + 1) % 2);
  ASSERT_EQ(state.chain.blocks.size(), 1u);
  EXPECT_EQ(state.chain.blocks[0].prev_hash, kZeroHash);
  EXPECT_EQ(state.chain.blocks[0].turn_count, state.tallies[0].total());
  for (const auto& p : state.players) {
    EXPECT_EQ(p.supply_hand.size(), 4u);
    EXPECT_EQ(p.validation_hand.size(), 1u);
    for (const auto& c : p.supply_hand) EXPECT_FALSE(state.locked_cards.contains(c.id));
  }
  for (const auto& c : state.supply_pile) EXPECT_FALSE(state.locked_cards.contains(c.id));
}

TEST(ApplyActionTest, FifthValidationFinishesTheGame) {
  GameState state = play_until(new_game(two_player_config(), 77), 77, [](const GameState& s) {
    return s.current_wagon == 4 && s.phase == Phase::Validate &&
           std::holds_alternative<PlayValidation>(legal_actions(s, s.turn)[0]);
  });
  ASSERT_EQ(state.phase, Phase::Validate);
  EXPECT_FALSE(is_terminal(state));
  state = apply_action(state, state.turn, legal_actions(state, state.turn)[0]);
  EXPECT_EQ(state.phase, Phase::Finished);
  EXPECT_TRUE(is_terminal(state));
  EXPECT_EQ(state.chain.blocks.size(), 5u);
  EXPECT_EQ(error_of([&] { apply_action(state, state.turn, Pass{}); }), ErrorCode::GameFinished);
}

TEST(IsTerminalTest, CountsValidatedWagons) {
  GameState state = new_game(two_player_config(), 1);
  EXPECT_FALSE(is_terminal(state));
  for (std::size_t w = 0; w < 4; ++w) state.boards[w].status = WagonStatus::Validated;
  EXPECT_FALSE(is_terminal(state));
  state.boards[4].status = WagonStatus::Validated;
  EXPECT_TRUE(is_terminal(state));
}

TEST(MatchesValidationTest, ExactSequenceOnly) {
  WagonBoard board;
  board.required = {W, F, M, W};
  board.filled = {{1, W}, {2, F}, {3, M}, {4, W}};
  EXPECT_TRUE(matches_validation(board, {50, {W, F, M, W}}));
  EXPECT_FALSE(matches_validation(board, {51, {W, F, W, M}}));
  board.filled.pop_back();
  EXPECT_EQ(error_of([&] { matches_validation(board, {50, {W, F, M, W}}); }),
            ErrorCode::WagonNotFull);
}

TEST(ReplayTest, EmptyActionListIsNewGame) {
  const auto config = two_player_config();
  EXPECT_EQ(replay(config, 5, {}), new_game(config, 5));
}

TEST(ReplayTest, FullEpisodeReproducesChain) {
  const auto config = GameConfig::standard(3);
  const GameState live =
      play_until(new_game(config, 12), 99, [](const GameState&) { return false; });
  const GameState replayed = replay(config, 12, action_list(live));
  EXPECT_EQ(canonical_state(replayed), canonical_state(live));
  EXPECT_EQ(replayed.chain.tip_hash(), live.chain.tip_hash());
}

// Alter the card id of each PlaySupply / PlayValidation in turn; every
// altered log must be rejected.
TEST(ReplayTest, AlteredCardIdDiverges) {
  const auto config = two_player_config();
  const GameState live =
      play_until(new_game(config, 13), 5, [](const GameState&) { return false; });
  const auto actions = action_list(live);
  std::size_t mutated = 0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    auto altered = actions;
    if (auto* a = std::get_if<PlaySupply>(&altered[i].second)) {
      a->card_id += 1000;
    } else if (auto* v = std::get_if<PlayValidation>(&altered[i].second)) {
      v->card_id += 1000;
    } else {
      continue;
    }
    ++mutated;
    EXPECT_EQ(error_of([&] { replay(config, 13, altered); }), ErrorCode::ReplayDiverged);
  }
  EXPECT_GT(mutated, 20u);
}

TEST(RedactedViewTest, OpenHandsShowsEverything) {
  GameConfig config = GameConfig::standard(3);
  config.open_hands = true;
  const GameState state = new_game(config, 2);
  const ViewState view = redacted_view(state, 1);
  for (std::size_t p = 0; p < 3; ++p) {
    ASSERT_TRUE(view.players[p].supply_hand);
    EXPECT_EQ(*view.players[p].supply_hand, state.players[p].supply_hand);
    EXPECT_EQ(*view.players[p].validation_hand, state.players[p].validation_hand);
  }
  EXPECT_EQ(view.supply_pile_count, state.supply_pile.size());
  EXPECT_EQ(view.boards, state.boards);
}

TEST(RedactedViewTest, HiddenHandsShowCounts) {
  const GameState state = new_game(GameConfig::standard(3), 2);
  const ViewState view = redacted_view(state, 0);
  ASSERT_TRUE(view.players[0].supply_hand);
  EXPECT_FALSE(view.players[1].supply_hand);
  EXPECT_FALSE(view.players[1].validation_hand);
  EXPECT_EQ(view.players[1].supply_count, 4u);
  EXPECT_EQ(view.players[1].validation_count, 1u);
  EXPECT_EQ(view.legal_actions, legal_actions(state, 0));
}

TEST(RedactedViewTest, UnknownViewer) {
  const GameState state = new_game(GameConfig::standard(3), 2);
  EXPECT_EQ(error_of([&] { redacted_view(state, 9); }), ErrorCode::UnknownPlayer);
}

TEST(RuleInvariantsTest, RandomEpisodesKeepEveryInvariant) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GameConfig config = GameConfig::standard(2 + seed % 4);
    config.immediate_validation_play = seed % 3 != 0;
    GameState state = new_game(config, seed);
    testing::InvariantChecker checker(state);
    Rng rng(seed ^ 0x5eed);
    const Policy policy = Policy::uniform_random();
    for (int steps = 0; state.phase != Phase::Finished && steps < 10'000; ++steps) {
      const PlayerIndex actor = state.turn;
      const Action action = policy.choose(state, rng);
      GameState next = apply_action(state, actor, action);
      checker.step(state, actor, action, next);
      state = std::move(next);
    }
    checker.finish(state);
    ASSERT_EQ(checker.total_violations(), 0u)
        << "seed " << seed << ": " << checker.messages().front();
  }
}

}  // namespace
}  // namespace blocktrain
