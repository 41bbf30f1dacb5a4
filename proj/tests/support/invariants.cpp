#include "invariants.hpp"

#include <algorithm>

#include "blocktrain/chain.hpp"

namespace blocktrain::testing {

const char* to_string(Invariant inv) {
  switch (inv) {
    case Invariant::Immutability: return "immutability";
    case Invariant::LeftToRight: return "left-to-right fill";
    case Invariant::Conservation: return "card conservation";
    case Invariant::DealCounts: return "4+1 deal counts";
    case Invariant::Rotation: return "clockwise rotation";
    case Invariant::Termination: return "termination";
  }
  return "?";
}

std::vector<CardId> all_card_ids(const GameState& state) {
  std::vector<CardId> ids;
  for (const auto& p : state.players) {
    for (const auto& c : p.supply_hand) ids.push_back(c.id);
    for (const auto& c : p.validation_hand) ids.push_back(c.id);
  }
  for (const auto& c : state.supply_pile) ids.push_back(c.id);
  for (const auto& c : state.validation_pile) ids.push_back(c.id);
  for (const auto& b : state.boards) {
    for (const auto& c : b.filled) ids.push_back(c.id);
    if (b.validation_card_id) ids.push_back(*b.validation_card_id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

InvariantChecker::InvariantChecker(const GameState& initial) : deck_(all_card_ids(initial)) {
  check_state(initial);
  check_deal(initial);
  expected_actor_ = initial.turn;
}

void InvariantChecker::record(Invariant inv, const std::string& message) {
  ++violations_[inv];
  if (messages_.size() < 20) messages_.push_back(std::string(to_string(inv)) + ": " + message);
}

std::size_t InvariantChecker::total_violations() const {
  std::size_t n = 0;
  for (const auto& [inv, count] : violations_) n += count;
  return n;
}

void InvariantChecker::check_state(const GameState& state) {
  for (const auto& board : state.boards) {
    bool prefix = board.filled.size() <= board.required.size();
    for (std::size_t i = 0; prefix && i < board.filled.size(); ++i) {
      prefix = board.filled[i].kind == board.required[i];
    }
    if (!prefix) record(Invariant::LeftToRight, "wagon " + std::to_string(board.index));
  }

  if (all_card_ids(state) != deck_) {
    record(Invariant::Conservation, "card multiset changed");
  }
  std::vector<CardId> locked;
  for (const auto& b : state.boards) {
    if (b.status != WagonStatus::Validated) continue;
    for (const auto& c : b.filled) locked.push_back(c.id);
    locked.push_back(*b.validation_card_id);
  }
  std::sort(locked.begin(), locked.end());
  if (!std::equal(locked.begin(), locked.end(), state.locked_cards.begin(),
                  state.locked_cards.end())) {
    record(Invariant::Conservation, "locked set differs from validated wagons");
  }
}

void InvariantChecker::check_deal(const GameState& state) {
  for (const auto& p : state.players) {
    if (p.supply_hand.size() != GameConfig::supply_hand_size ||
        p.validation_hand.size() != GameConfig::validation_hand_size) {
      record(Invariant::DealCounts, "player " + std::to_string(p.index) + " holds " +
                                        std::to_string(p.supply_hand.size()) + "+" +
                                        std::to_string(p.validation_hand.size()));
    }
  }
}

void InvariantChecker::step(const GameState& before, PlayerIndex player,
                            const Action& action, const GameState& after) {
  (void)action;
  for (std::size_t w = 0; w < before.boards.size(); ++w) {
    if (before.boards[w].status != WagonStatus::Validated) continue;
    if (!(before.boards[w] == after.boards[w])) {
      record(Invariant::Immutability, "validated wagon " + std::to_string(w) + " changed");
    }
  }
  if (after.chain.blocks.size() < before.chain.blocks.size() ||
      !std::equal(before.chain.blocks.begin(), before.chain.blocks.end(),
                  after.chain.blocks.begin())) {
    record(Invariant::Immutability, "earlier blocks changed");
  }

  check_state(after);
  if (after.current_wagon != before.current_wagon && after.phase != Phase::Finished) {
    check_deal(after);
  }

  if (expected_actor_ && player != *expected_actor_) {
    record(Invariant::Rotation, "expected player " + std::to_string(*expected_actor_) +
                                    ", got " + std::to_string(player));
  }
  const bool wagon_completed = before.phase == Phase::Fill && after.phase == Phase::Validate;
  const bool same_turn_draw = after.drawn_match_pending;
  if (wagon_completed || same_turn_draw) {
    expected_actor_ = player;
  } else {
    expected_actor_ = static_cast<PlayerIndex>((player + 1) % before.config.players);
  }
}

void InvariantChecker::finish(const GameState& final_state) {
  if (final_state.phase != Phase::Finished || !is_terminal(final_state) ||
      final_state.validated_count() != final_state.config.target_wagons ||
      final_state.chain.blocks.size() != final_state.config.target_wagons ||
      !verify_chain(final_state.chain).valid) {
    record(Invariant::Termination, "episode did not finish cleanly");
  }
}

}  // namespace blocktrain::testing
