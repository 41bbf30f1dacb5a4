#pragma once

// Exact expectations by exhaustive enumeration. These re-implement the turn
// protocol from scratch and deliberately do not use rules.hpp, so they can
// cross-check the engine.

#include <boost/rational.hpp>
#include <cstddef>
#include <cstdint>
#include <span>

#include "blocktrain/config.hpp"
#include "blocktrain/types.hpp"

namespace blocktrain::oracle {

using Rational = boost::rational<std::int64_t>;

/// Expected validation turns for one wagon when exactly one of `deck_size`
/// validation cards matches, each of `players` holds one card and the rest
/// form the draw pile. Every placement of the matching card is simulated
/// and the results averaged. Throws InvalidDeck when deck_size < players or
/// players == 0.
Rational exact_validation_turns(std::size_t players, std::size_t deck_size,
                                bool immediate_play);

/// Turns to fill `required` for one dealt deck: player p holds
/// deck[4p .. 4p+4), the remaining cards are the draw pile (front drawn
/// first), and player 0 starts. Throws InvalidDeck if the deck cannot
/// supply the wagon or is too small to deal.
std::uint64_t simulate_fill_protocol(std::size_t players, const Sequence& required,
                                     std::span<const SupplyKind> deck);

inline constexpr std::uint64_t kMaxArrangements = 1'000'000;

/// Expected fill turns for the first wagon of `config`, averaged over every
/// distinct arrangement of the supply deck. Players may be 1 here. Throws
/// TooLarge past kMaxArrangements arrangements.
Rational exact_fill_turns_small(const GameConfig& config);

}  // namespace blocktrain::oracle
