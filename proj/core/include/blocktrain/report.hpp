#pragma once

// simreport_v1: the JSON document written by `blocktrain sim --report`.

#include <nlohmann/json.hpp>
#include <span>
#include <string>

#include "blocktrain/sim.hpp"

namespace blocktrain {

inline constexpr const char* kSimReportVersion = "simreport_v1";

/// Wall-clock length of one in-person session, used as a reference point
/// next to the turn-based estimate. Includes discussion and setup.
inline constexpr double kReferenceSessionMinutes = 20.0;

struct DurationBand {
  double low_seconds_per_turn = 15.0;
  double high_seconds_per_turn = 25.0;
  double low_minutes = 0;
  double high_minutes = 0;

  bool overlaps(double lo, double hi) const { return low_minutes <= hi && high_minutes >= lo; }
};

/// Throws InvalidRate unless 0 < low <= high.
DurationBand duration_band(const AggregateStats& stats, double low_seconds_per_turn = 15.0,
                           double high_seconds_per_turn = 25.0);

nlohmann::json sim_report(const GameConfig& config, Policy policy, std::uint64_t seed,
                          std::span<const EpisodeStats> episodes,
                          double seconds_per_turn = 20.0);

/// One header line plus one row per episode:
/// episode,seed,total_turns,fill_turns,validation_turns,wagons_validated
std::string episodes_csv(std::span<const EpisodeStats> episodes);

}  // namespace blocktrain
