#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "blocktrain/chain.hpp"
#include "blocktrain/config.hpp"
#include "blocktrain/rng.hpp"
#include "blocktrain/rules.hpp"

namespace blocktrain {

/// Bot that picks one of the legal actions. Deterministic given its Rng.
struct Policy {
  enum class Kind : std::uint8_t {
    UniformRandomLegal,
    /// Always the first legal action; handy for scripted clients.
    FirstLegal,
  };

  Kind kind = Kind::UniformRandomLegal;

  Action choose(const GameState& state, Rng& rng) const;

  static Policy uniform_random() { return {Kind::UniformRandomLegal}; }
  static Policy first_legal() { return {Kind::FirstLegal}; }
};

std::string_view to_string(Policy::Kind kind);

struct EpisodeStats {
  std::vector<std::uint64_t> fill_turns;
  std::vector<std::uint64_t> validation_turns;
  std::uint64_t total_turns = 0;
  std::size_t wagons_validated = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const EpisodeStats&, const EpisodeStats&) = default;
};

struct Summary {
  double mean = 0;
  double stddev = 0;  // sample standard deviation; 0 for a single episode
  std::uint64_t min = 0;
  std::uint64_t max = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

struct AggregateStats {
  std::size_t episodes = 0;
  Summary total_turns;
  Summary fill_turns;
  Summary validation_turns;
  double seconds_per_turn = 20.0;
  double estimated_minutes = 0;

  friend bool operator==(const AggregateStats&, const AggregateStats&) = default;
};

inline constexpr std::size_t kDefaultStepCap = 10'000;

/// Plays new_game(config, seed) to the end. The policy draws from its own
/// generator seeded with derive_seed(seed, 0). Throws NonTermination when
/// the step cap is hit.
std::pair<EpisodeStats, Chain> run_episode(const GameConfig& config, Policy policy,
                                           std::uint64_t seed,
                                           std::size_t step_cap = kDefaultStepCap);

/// Seed of episode i: derive_seed(master, i).
std::uint64_t episode_seed(std::uint64_t master, std::size_t index);

/// Per-episode results in episode order. `workers` > 1 splits the episodes
/// across threads; the output does not depend on it. Throws InvalidCount.
std::vector<EpisodeStats> run_episodes(const GameConfig& config, Policy policy,
                                       std::size_t n, std::uint64_t seed,
                                       std::size_t workers = 1);

/// Throws InvalidCount on an empty input, InvalidRate on a bad rate.
AggregateStats aggregate(std::span<const EpisodeStats> episodes,
                         double seconds_per_turn = 20.0);

AggregateStats monte_carlo(const GameConfig& config, Policy policy, std::size_t n,
                           std::uint64_t seed, std::size_t workers = 1,
                           double seconds_per_turn = 20.0);

/// mean total turns * seconds_per_turn / 60. Throws InvalidRate unless the
/// rate is finite and positive.
double estimate_duration(const AggregateStats& stats, double seconds_per_turn);

}  // namespace blocktrain
