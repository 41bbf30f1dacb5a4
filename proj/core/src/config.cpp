#include "blocktrain/config.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "blocktrain/errors.hpp"

namespace blocktrain {
namespace {

constexpr std::size_t kMaxSlots = 16;

[[noreturn]] void invalid(const std::string& why) {
  throw Error(ErrorCode::ConfigInvalid, why);
}

std::uint64_t sequence_space(std::size_t slots) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < slots; ++i) n *= 3;
  return n;
}

Sequence sequence_at(std::uint64_t k, std::size_t slots) {
  Sequence seq(slots);
  for (std::size_t i = slots; i > 0; --i) {
    seq[i - 1] = kAllSupplyKinds[k % 3];
    k /= 3;
  }
  return seq;
}

// Walks the sequence space with a stride that is coprime to 3^slots, so the
// first 3^slots steps visit every sequence exactly once.
class SequenceWalk {
 public:
  explicit SequenceWalk(std::size_t slots)
      : slots_(slots), space_(sequence_space(slots)) {
    stride_ = std::max<std::uint64_t>(1, space_ * 618 / 1000);
    if (stride_ % 3 == 0) ++stride_;
    next_ = space_ / 7;
  }

  Sequence next() {
    Sequence seq = sequence_at(next_ % space_, slots_);
    next_ = (next_ + stride_) % space_;
    return seq;
  }

  std::uint64_t space() const { return space_; }

 private:
  std::size_t slots_;
  std::uint64_t space_;
  std::uint64_t stride_ = 1;
  std::uint64_t next_ = 0;
};

}  // namespace

GameConfig GameConfig::standard(std::size_t players) {
  GameConfig config;
  config.players = players;
  config.wagon_set =
      generate_wagon_set(config.slots_per_wagon, config.target_wagons);
  return config;
}

std::vector<Sequence> generate_wagon_set(std::size_t slots, std::size_t count) {
  if (slots == 0 || slots > kMaxSlots) invalid("slots_per_wagon out of range");
  SequenceWalk walk(slots);
  if (count > walk.space()) invalid("more wagons than distinct sequences");
  std::vector<Sequence> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(walk.next());
  return out;
}

std::vector<Sequence> decoy_sequences(const GameConfig& config) {
  std::vector<Sequence> out;
  if (config.validation_decoys == 0) return out;
  const std::set<Sequence> wagons(config.wagon_set.begin(),
                                  config.wagon_set.end());
  SequenceWalk walk(config.slots_per_wagon);
  if (wagons.size() >= walk.space()) {
    invalid("no sequence left over for decoy validation cards");
  }
  out.reserve(config.validation_decoys);
  while (out.size() < config.validation_decoys) {
    Sequence seq = walk.next();
    if (!wagons.contains(seq)) out.push_back(std::move(seq));
  }
  return out;
}

void validate_config(const GameConfig& config) {
  if (config.players < kMinPlayers || config.players > kMaxPlayers) {
    invalid("players must be in 2..=5, got " + std::to_string(config.players));
  }
  if (config.slots_per_wagon == 0 || config.slots_per_wagon > kMaxSlots) {
    invalid("slots_per_wagon out of range");
  }
  if (config.target_wagons == 0) invalid("target_wagons must be positive");
  if (config.wagon_set.size() < config.target_wagons) {
    invalid("wagon_set shorter than target_wagons");
  }
  std::set<Sequence> seen;
  for (const auto& seq : config.wagon_set) {
    if (seq.size() != config.slots_per_wagon) {
      invalid("wagon sequence length differs from slots_per_wagon");
    }
    if (!seen.insert(seq).second) {
      invalid("duplicate wagon sequence " + sequence_to_string(seq));
    }
  }
  // Throws if decoys cannot avoid the wagon sequences.
  (void)decoy_sequences(config);

  // Supply: every kind must cover all target wagons even if each played card
  // stays locked, and every redeal must be able to fill all hands.
  for (SupplyKind kind : kAllSupplyKinds) {
    std::size_t needed = 0;
    for (std::size_t w = 0; w < config.target_wagons; ++w) {
      needed += static_cast<std::size_t>(
          std::count(config.wagon_set[w].begin(), config.wagon_set[w].end(), kind));
    }
    if (config.supply_copies_per_kind < needed) {
      invalid(std::string("not enough ") + kind_code(kind) +
              " supply cards for the target wagons");
    }
  }
  const std::size_t supply_total = 3 * config.supply_copies_per_kind;
  const std::size_t validation_total =
      config.wagon_set.size() + config.validation_decoys;
  for (std::size_t w = 0; w < config.target_wagons; ++w) {
    const std::size_t locked = w * config.slots_per_wagon;
    if (supply_total < locked + config.players * GameConfig::supply_hand_size) {
      invalid("supply deck too small to deal wagon " + std::to_string(w));
    }
    if (validation_total < w + config.players * GameConfig::validation_hand_size) {
      invalid("validation deck too small to deal wagon " + std::to_string(w));
    }
  }
}

}  // namespace blocktrain
