#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "blocktrain/types.hpp"

namespace blocktrain {

/// prev_hash of the genesis block.
inline const std::string kZeroHash(64, '0');

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

/// A validated wagon frozen into the ledger.
struct Block {
  std::size_t index = 0;
  std::string prev_hash;
  Sequence payload_sequence;
  CardId validation_card_id = 0;
  PlayerIndex validator = 0;
  std::uint64_t turn_count = 0;
  std::string hash;

  friend bool operator==(const Block&, const Block&) = default;
};

struct Chain {
  std::vector<Block> blocks;

  const std::string& tip_hash() const {
    return blocks.empty() ? kZeroHash : blocks.back().hash;
  }

  friend bool operator==(const Chain&, const Chain&) = default;
};

/// Hash preimage of a block (the `hash` field is ignored):
///
///   v1|{index}|{prev_hash}|{K1,...,Kn}|{validation_card_id}|{validator}|{turn_count}
///
/// with kinds written as W, F or M. Throws MalformedBlock when prev_hash is
/// not 64 lowercase hex characters or the payload is empty.
std::string canonical_bytes(const Block& block);

/// Seals a validated wagon as block number board.index on top of prev_hash.
/// Throws WagonNotValidated unless board.status == Validated.
Block finalize_block(const WagonBoard& board, const std::string& prev_hash,
                     PlayerIndex validator, std::uint64_t turn_count);

enum class VerifyReason : std::uint8_t { HashMismatch, LinkMismatch, IndexGap };

std::string_view to_string(VerifyReason reason);

struct VerifyResult {
  bool valid = true;
  std::size_t first_bad_index = 0;
  VerifyReason reason = VerifyReason::HashMismatch;

  static VerifyResult ok() { return {}; }
  static VerifyResult invalid(std::size_t index, VerifyReason reason) {
    return {false, index, reason};
  }

  friend bool operator==(const VerifyResult&, const VerifyResult&) = default;
};

/// Checks blocks in height order and reports the first offense. Per block the
/// order is: index, stored hash against the recomputed one, link to the
/// predecessor. A block that cannot be encoded counts as HashMismatch.
VerifyResult verify_chain(const Chain& chain);

/// Field edits for the tamper demonstration.
enum class BlockField : std::uint8_t {
  Index,
  PrevHash,
  PayloadSequence,
  ValidationCardId,
  Validator,
  TurnCount,
  Hash,
};

inline constexpr BlockField kAllBlockFields[] = {
    BlockField::Index,            BlockField::PrevHash,
    BlockField::PayloadSequence,  BlockField::ValidationCardId,
    BlockField::Validator,        BlockField::TurnCount,
    BlockField::Hash,
};

std::string_view to_string(BlockField field);
/// Accepts the snake_case field names used in ledger files.
std::optional<BlockField> block_field_from_string(std::string_view name);

struct SetIndex { std::size_t value; };
struct SetPrevHash { std::string value; };
struct SetPayload { Sequence value; };
struct SetValidationCardId { CardId value; };
struct SetValidator { PlayerIndex value; };
struct SetTurnCount { std::uint64_t value; };
struct SetHash { std::string value; };

using Mutation = std::variant<SetIndex, SetPrevHash, SetPayload,
                              SetValidationCardId, SetValidator, SetTurnCount,
                              SetHash>;

/// A mutation of `field` that is guaranteed to change `block`: numbers are
/// incremented, the first payload kind is rotated, and the last hex digit of
/// a hash is replaced.
Mutation default_mutation(const Block& block, BlockField field);

/// Copy of `chain` with one field of block `index` edited. Hashes are not
/// recomputed. Throws IndexOutOfRange.
Chain tamper(const Chain& chain, std::size_t index, const Mutation& mutation);

}  // namespace blocktrain
