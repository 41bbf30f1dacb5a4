#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "blocktrain/types.hpp"

namespace blocktrain {

inline constexpr std::size_t kMinPlayers = 2;
inline constexpr std::size_t kMaxPlayers = 5;

/// Table setup. Everything the rules leave open (wagon size, deck sizes,
/// hand visibility, draw-then-validate timing) is a field here.
struct GameConfig {
  static constexpr std::size_t supply_hand_size = 4;
  static constexpr std::size_t validation_hand_size = 1;

  std::size_t players = 5;
  std::size_t slots_per_wagon = 4;
  std::size_t target_wagons = 5;
  /// Printed slot labels of each wagon, in play order. Only the first
  /// target_wagons are played; the rest still contribute validation cards.
  std::vector<Sequence> wagon_set;
  std::size_t supply_copies_per_kind = 20;
  std::size_t validation_decoys = 10;
  bool open_hands = false;
  bool immediate_validation_play = true;

  /// Defaults with a generated wagon set sized to match.
  static GameConfig standard(std::size_t players = 5);

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

/// `count` distinct sequences of length `slots`, spread over the 3^slots
/// sequence space. Throws ConfigInvalid when count exceeds the space.
std::vector<Sequence> generate_wagon_set(std::size_t slots, std::size_t count);

/// The decoy validation sequences for a config: never equal to a wagon
/// sequence; may repeat each other when the sequence space is small.
std::vector<Sequence> decoy_sequences(const GameConfig& config);

/// Throws Error(ConfigInvalid) describing the first violated constraint:
/// player range, slot/wagon counts, wagon sequence shape and uniqueness,
/// decoy space, and deck feasibility under worst-case card locking.
void validate_config(const GameConfig& config);

}  // namespace blocktrain
