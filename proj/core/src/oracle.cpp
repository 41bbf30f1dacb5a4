#include "blocktrain/oracle.hpp"

#include <algorithm>
#include <deque>
#include <vector>

#include "blocktrain/errors.hpp"

namespace blocktrain::oracle {
namespace {

constexpr std::size_t kHandSize = 4;

// Distinct orderings of a multiset, or 0 once the count passes `cap`.
std::uint64_t arrangements(const std::array<std::size_t, 3>& counts, std::uint64_t cap) {
  // Build the multinomial as a product of binomials to keep it exact.
  std::uint64_t result = 1;
  std::size_t placed = 0;
  for (std::size_t c : counts) {
    for (std::size_t k = 1; k <= c; ++k) {
      // result *= (placed + k) / k, exact at every step.
      result = result * (placed + k) / k;
      if (result > cap) return 0;
    }
    placed += c;
  }
  return result;
}

}  // namespace

Rational exact_validation_turns(std::size_t players, std::size_t deck_size,
                                bool immediate_play) {
  if (players == 0 || deck_size < players) {
    throw Error(ErrorCode::InvalidDeck, "need at least one validation card per player");
  }
  const std::size_t pile_size = deck_size - players;
  std::int64_t total = 0;
  for (std::size_t placement = 0; placement < deck_size; ++placement) {
    // Seats are numbered in acting order; the pile is drawn front first.
    std::vector<bool> holds(players, false);
    std::deque<bool> pile(pile_size, false);
    if (placement < players) {
      holds[placement] = true;
    } else {
      pile[placement - players] = true;
    }
    std::int64_t turns = 0;
    for (std::size_t seat = 0;; seat = (seat + 1) % players) {
      ++turns;
      if (holds[seat]) break;
      if (pile.empty()) continue;
      const bool drew_match = pile.front();
      pile.pop_front();
      if (drew_match) {
        if (immediate_play) break;
        holds[seat] = true;
      }
    }
    total += turns;
  }
  return Rational(total, static_cast<std::int64_t>(deck_size));
}

std::uint64_t simulate_fill_protocol(std::size_t players, const Sequence& required,
                                     std::span<const SupplyKind> deck) {
  if (players == 0 || deck.size() < players * kHandSize) {
    throw Error(ErrorCode::InvalidDeck, "deck too small to deal every hand");
  }
  for (SupplyKind kind : kAllSupplyKinds) {
    if (std::count(deck.begin(), deck.end(), kind) <
        std::count(required.begin(), required.end(), kind)) {
      throw Error(ErrorCode::InvalidDeck, "deck cannot supply the wagon");
    }
  }
  std::vector<std::array<std::size_t, 3>> hands(players, {0, 0, 0});
  for (std::size_t p = 0; p < players; ++p) {
    for (std::size_t c = 0; c < kHandSize; ++c) {
      ++hands[p][static_cast<std::size_t>(deck[p * kHandSize + c])];
    }
  }
  std::size_t pile_pos = players * kHandSize;

  std::uint64_t turns = 0;
  std::size_t slot = 0;
  for (std::size_t seat = 0; slot < required.size(); seat = (seat + 1) % players) {
    ++turns;
    auto& held = hands[seat][static_cast<std::size_t>(required[slot])];
    if (held > 0) {
      --held;
      ++slot;
    } else if (pile_pos < deck.size()) {
      ++hands[seat][static_cast<std::size_t>(deck[pile_pos++])];
    }
  }
  return turns;
}

Rational exact_fill_turns_small(const GameConfig& config) {
  if (config.wagon_set.empty()) throw Error(ErrorCode::ConfigInvalid, "no wagon to fill");
  const std::size_t copies = config.supply_copies_per_kind;
  const std::array<std::size_t, 3> counts{copies, copies, copies};
  const std::uint64_t total = arrangements(counts, kMaxArrangements);
  if (total == 0) {
    throw Error(ErrorCode::TooLarge, "more than " + std::to_string(kMaxArrangements) +
                                         " deck arrangements");
  }

  std::vector<SupplyKind> deck;
  for (SupplyKind kind : kAllSupplyKinds) deck.insert(deck.end(), copies, kind);
  // next_permutation over a sorted multiset visits each distinct ordering
  // once; every ordering stands for the same number of card permutations.
  std::int64_t sum = 0;
  std::int64_t seen = 0;
  do {
    sum += static_cast<std::int64_t>(
        simulate_fill_protocol(config.players, config.wagon_set.front(), deck));
    ++seen;
  } while (std::next_permutation(deck.begin(), deck.end()));
  return Rational(sum, seen);
}

}  // namespace blocktrain::oracle
