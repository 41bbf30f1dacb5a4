#include "blocktrain/chain.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "blocktrain/errors.hpp"

namespace blocktrain {
namespace {

bool is_lower_hex64(std::string_view s) {
  if (s.size() != 64) return false;
  for (char c : s) {
    const bool digit = c >= '0' && c <= '9';
    const bool lower = c >= 'a' && c <= 'f';
    if (!digit && !lower) return false;
  }
  return true;
}

std::string flip_last_hex_digit(std::string hex) {
  if (hex.empty()) return "0";
  hex.back() = hex.back() == '0' ? '1' : '0';
  return hex;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string canonical_bytes(const Block& block) {
  if (!is_lower_hex64(block.prev_hash)) {
    throw Error(ErrorCode::MalformedBlock,
                "prev_hash must be 64 lowercase hex characters");
  }
  if (block.payload_sequence.empty()) {
    throw Error(ErrorCode::MalformedBlock, "empty payload sequence");
  }
  std::string out = "v1|";
  out += std::to_string(block.index);
  out += '|';
  out += block.prev_hash;
  out += '|';
  out += sequence_to_string(block.payload_sequence);
  out += '|';
  out += std::to_string(block.validation_card_id);
  out += '|';
  out += std::to_string(block.validator);
  out += '|';
  out += std::to_string(block.turn_count);
  return out;
}

Block finalize_block(const WagonBoard& board, const std::string& prev_hash,
                     PlayerIndex validator, std::uint64_t turn_count) {
  if (board.status != WagonStatus::Validated || !board.validation_card_id) {
    throw Error(ErrorCode::WagonNotValidated,
                "wagon " + std::to_string(board.index) + " is not validated");
  }
  Block block;
  block.index = board.index;
  block.prev_hash = prev_hash;
  block.payload_sequence = board.filled_kinds();
  block.validation_card_id = *board.validation_card_id;
  block.validator = validator;
  block.turn_count = turn_count;
  block.hash = sha256_hex(canonical_bytes(block));
  return block;
}

std::string_view to_string(VerifyReason reason) {
  switch (reason) {
    case VerifyReason::HashMismatch: return "HashMismatch";
    case VerifyReason::LinkMismatch: return "LinkMismatch";
    case VerifyReason::IndexGap: return "IndexGap";
  }
  return "?";
}

VerifyResult verify_chain(const Chain& chain) {
  for (std::size_t i = 0; i < chain.blocks.size(); ++i) {
    const Block& block = chain.blocks[i];
    if (block.index != i) {
      return VerifyResult::invalid(i, VerifyReason::IndexGap);
    }
    std::string recomputed;
    try {
      recomputed = sha256_hex(canonical_bytes(block));
    } catch (const Error&) {
      return VerifyResult::invalid(i, VerifyReason::HashMismatch);
    }
    if (recomputed != block.hash) {
      return VerifyResult::invalid(i, VerifyReason::HashMismatch);
    }
    const std::string& expected_prev =
        i == 0 ? kZeroHash : chain.blocks[i - 1].hash;
    if (block.prev_hash != expected_prev) {
      return VerifyResult::invalid(i, VerifyReason::LinkMismatch);
    }
  }
  return VerifyResult::ok();
}

std::string_view to_string(BlockField field) {
  switch (field) {
    case BlockField::Index: return "index";
    case BlockField::PrevHash: return "prev_hash";
    case BlockField::PayloadSequence: return "payload_sequence";
    case BlockField::ValidationCardId: return "validation_card_id";
    case BlockField::Validator: return "validator";
    case BlockField::TurnCount: return "turn_count";
    case BlockField::Hash: return "hash";
  }
  return "?";
}

std::optional<BlockField> block_field_from_string(std::string_view name) {
  for (BlockField field : kAllBlockFields) {
    if (to_string(field) == name) return field;
  }
  return std::nullopt;
}

Mutation default_mutation(const Block& block, BlockField field) {
  switch (field) {
    case BlockField::Index: return SetIndex{block.index + 1};
    case BlockField::PrevHash: return SetPrevHash{flip_last_hex_digit(block.prev_hash)};
    case BlockField::PayloadSequence: {
      Sequence seq = block.payload_sequence;
      if (seq.empty()) {
        seq.push_back(SupplyKind::Water);
      } else {
        seq[0] = kAllSupplyKinds[(static_cast<std::size_t>(seq[0]) + 1) % 3];
      }
      return SetPayload{std::move(seq)};
    }
    case BlockField::ValidationCardId:
      return SetValidationCardId{block.validation_card_id + 1};
    case BlockField::Validator: return SetValidator{block.validator + 1};
    case BlockField::TurnCount: return SetTurnCount{block.turn_count + 1};
    case BlockField::Hash: return SetHash{flip_last_hex_digit(block.hash)};
  }
  return SetHash{flip_last_hex_digit(block.hash)};
}

Chain tamper(const Chain& chain, std::size_t index, const Mutation& mutation) {
  if (index >= chain.blocks.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "block " + std::to_string(index) + " of " +
                    std::to_string(chain.blocks.size()));
  }
  Chain out = chain;
  Block& b = out.blocks[index];
  std::visit(Overloaded{
                 [&](const SetIndex& m) { b.index = m.value; },
                 [&](const SetPrevHash& m) { b.prev_hash = m.value; },
                 [&](const SetPayload& m) { b.payload_sequence = m.value; },
                 [&](const SetValidationCardId& m) { b.validation_card_id = m.value; },
                 [&](const SetValidator& m) { b.validator = m.value; },
                 [&](const SetTurnCount& m) { b.turn_count = m.value; },
                 [&](const SetHash& m) { b.hash = m.value; },
             },
             mutation);
  return out;
}

}  // namespace blocktrain
