#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace blocktrain {

using CardId = std::uint32_t;
using PlayerIndex = std::uint32_t;

enum class SupplyKind : std::uint8_t { Water, Food, Medicine };

inline constexpr std::array<SupplyKind, 3> kAllSupplyKinds = {
    SupplyKind::Water, SupplyKind::Food, SupplyKind::Medicine};

/// Single-letter code used in canonical encodings: W, F or M.
char kind_code(SupplyKind kind);
std::optional<SupplyKind> kind_from_code(char code);

/// An ordered list of supply kinds: a wagon's slot labels or a validation
/// card's printed combination.
using Sequence = std::vector<SupplyKind>;

/// "W,F,M,W"
std::string sequence_to_string(const Sequence& seq);

struct SupplyCard {
  CardId id = 0;
  SupplyKind kind = SupplyKind::Water;

  friend bool operator==(const SupplyCard&, const SupplyCard&) = default;
};

struct ValidationCard {
  CardId id = 0;
  Sequence sequence;

  friend bool operator==(const ValidationCard&, const ValidationCard&) = default;
};

enum class WagonStatus : std::uint8_t { Filling, Validating, Validated };

std::string_view to_string(WagonStatus status);

/// One train wagon. Slots are filled strictly left to right and a slot only
/// accepts a card of the kind printed on it.
struct WagonBoard {
  std::size_t index = 0;
  Sequence required;
  std::vector<SupplyCard> filled;
  WagonStatus status = WagonStatus::Filling;
  std::optional<PlayerIndex> validated_by;
  std::optional<CardId> validation_card_id;

  bool is_full() const { return filled.size() == required.size(); }

  std::optional<SupplyKind> next_required() const {
    if (is_full()) return std::nullopt;
    return required[filled.size()];
  }

  /// The kinds actually placed, in slot order.
  Sequence filled_kinds() const;

  friend bool operator==(const WagonBoard&, const WagonBoard&) = default;
};

}  // namespace blocktrain
