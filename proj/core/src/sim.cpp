#include "blocktrain/sim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "blocktrain/errors.hpp"

namespace blocktrain {

Action Policy::choose(const GameState& state, Rng& rng) const {
  auto legal = legal_actions(state, state.turn);
  if (legal.empty()) throw Error(ErrorCode::IllegalAction, "no legal action for the current player");
  switch (kind) {
    case Kind::FirstLegal: return legal.front();
    case Kind::UniformRandomLegal: break;
  }
  return legal[static_cast<std::size_t>(rng.below(legal.size()))];
}

std::string_view to_string(Policy::Kind kind) {
  switch (kind) {
    case Policy::Kind::UniformRandomLegal: return "UniformRandomLegal";
    case Policy::Kind::FirstLegal: return "FirstLegal";
  }
  return "?";
}

std::pair<EpisodeStats, Chain> run_episode(const GameConfig& config, Policy policy,
                                           std::uint64_t seed, std::size_t step_cap) {
  GameState state = new_game(config, seed);
  Rng policy_rng(derive_seed(seed, 0));
  std::size_t steps = 0;
  while (state.phase != Phase::Finished) {
    if (steps++ == step_cap) {
      throw Error(ErrorCode::NonTermination,
                  "seed " + std::to_string(seed) + " exceeded " +
                      std::to_string(step_cap) + " actions");
    }
    const Action action = policy.choose(state, policy_rng);
    apply_action_in_place(state, state.turn, action);
  }

  EpisodeStats stats;
  stats.seed = seed;
  stats.wagons_validated = state.validated_count();
  for (const auto& tally : state.tallies) {
    stats.fill_turns.push_back(tally.fill_turns);
    stats.validation_turns.push_back(tally.validation_turns);
    stats.total_turns += tally.total();
  }
  return {std::move(stats), std::move(state.chain)};
}

std::uint64_t episode_seed(std::uint64_t master, std::size_t index) {
  return derive_seed(master, index);
}

std::vector<EpisodeStats> run_episodes(const GameConfig& config, Policy policy,
                                       std::size_t n, std::uint64_t seed,
                                       std::size_t workers) {
  if (n == 0) throw Error(ErrorCode::InvalidCount, "episode count must be at least 1");
  validate_config(config);
  std::vector<EpisodeStats> out(n);
  workers = std::clamp<std::size_t>(workers, 1, n);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = run_episode(config, policy, episode_seed(seed, i)).first;
    }
  };
  if (workers == 1) {
    run_range(0, n);
    return out;
  }

  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(n, w * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      threads.emplace_back([&, w, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

namespace {

// Integer sums are exact, so the result is independent of episode order.
class SummaryBuilder {
 public:
  void add(std::uint64_t x) {
    if (count_ == 0) {
      min_ = max_ = x;
    } else {
      min_ = std::min(min_, x);
      max_ = std::max(max_, x);
    }
    ++count_;
    sum_ += x;
    sum_sq_ += x * x;
  }

  Summary build() const {
    Summary s;
    s.min = min_;
    s.max = max_;
    const auto n = static_cast<long double>(count_);
    s.mean = static_cast<double>(static_cast<long double>(sum_) / n);
    if (count_ > 1) {
      const long double sum = static_cast<long double>(sum_);
      const long double var =
          (static_cast<long double>(sum_sq_) - sum * sum / n) / (n - 1);
      s.stddev = static_cast<double>(std::sqrt(std::max(var, 0.0L)));
    }
    return s;
  }

 private:
  std::uint64_t count_ = 0;
  std::uint64_t sum_ = 0;
  std::uint64_t sum_sq_ = 0;
  std::uint64_t min_ = 0;
  std::uint64_t max_ = 0;
};

void check_rate(double seconds_per_turn) {
  if (!std::isfinite(seconds_per_turn) || seconds_per_turn <= 0) {
    throw Error(ErrorCode::InvalidRate, "seconds per turn must be positive");
  }
}

}  // namespace

AggregateStats aggregate(std::span<const EpisodeStats> episodes, double seconds_per_turn) {
  if (episodes.empty()) throw Error(ErrorCode::InvalidCount, "no episodes to aggregate");
  check_rate(seconds_per_turn);
  SummaryBuilder total, fill, validation;
  for (const auto& e : episodes) {
    std::uint64_t f = 0, v = 0;
    for (auto x : e.fill_turns) f += x;
    for (auto x : e.validation_turns) v += x;
    total.add(e.total_turns);
    fill.add(f);
    validation.add(v);
  }
  AggregateStats stats;
  stats.episodes = episodes.size();
  stats.total_turns = total.build();
  stats.fill_turns = fill.build();
  stats.validation_turns = validation.build();
  stats.seconds_per_turn = seconds_per_turn;
  stats.estimated_minutes = estimate_duration(stats, seconds_per_turn);
  return stats;
}

AggregateStats monte_carlo(const GameConfig& config, Policy policy, std::size_t n,
                           std::uint64_t seed, std::size_t workers,
                           double seconds_per_turn) {
  check_rate(seconds_per_turn);
  const auto episodes = run_episodes(config, policy, n, seed, workers);
  return aggregate(episodes, seconds_per_turn);
}

double estimate_duration(const AggregateStats& stats, double seconds_per_turn) {
  check_rate(seconds_per_turn);
  return stats.total_turns.mean * seconds_per_turn / 60.0;
}

}  // namespace blocktrain
