#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <ranges>
#include <utility>

namespace blocktrain {

/// SplitMix64 step. Advances `state` and returns the next output.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for the `index`-th child of `master`. Children are the SplitMix64
/// outputs at position index + 1 of a stream seeded with `master`, so any
/// child can be computed without generating the ones before it.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// xoshiro256** with an explicit, serializable state. Output, including
/// bounded draws and shuffles, is identical on every platform.
class Rng {
 public:
  using State = std::array<std::uint64_t, 4>;

  explicit Rng(std::uint64_t seed = 0);

  static Rng from_state(const State& state);
  const State& state() const { return s_; }

  std::uint64_t next();

  /// Uniform in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

  /// Fisher-Yates, high index downwards.
  template <std::ranges::random_access_range R>
  void shuffle(R&& items) {
    auto first = std::ranges::begin(items);
    for (auto i = static_cast<std::uint64_t>(std::ranges::size(items)); i > 1; --i) {
      const auto j = below(i);
      std::ranges::iter_swap(first + static_cast<std::ptrdiff_t>(i - 1),
                             first + static_cast<std::ptrdiff_t>(j));
    }
  }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  State s_{};
};

}  // namespace blocktrain
