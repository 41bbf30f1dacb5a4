#include "blocktrain/report.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "blocktrain/errors.hpp"
#include "blocktrain/serialize.hpp"

namespace blocktrain {

using nlohmann::json;

namespace {

json summary_json(const Summary& s) {
  return json{{"mean", s.mean}, {"stddev", s.stddev}, {"min", s.min}, {"max", s.max}};
}

std::uint64_t sum(const std::vector<std::uint64_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
}

}  // namespace

DurationBand duration_band(const AggregateStats& stats, double low, double high) {
  if (!(low > 0) || !(high >= low) || !std::isfinite(high)) {
    throw Error(ErrorCode::InvalidRate, "band needs 0 < low <= high");
  }
  return {low, high, estimate_duration(stats, low), estimate_duration(stats, high)};
}

json sim_report(const GameConfig& config, Policy policy, std::uint64_t seed,
                std::span<const EpisodeStats> episodes, double seconds_per_turn) {
  const AggregateStats stats = aggregate(episodes, seconds_per_turn);
  const DurationBand band = duration_band(stats);

  json per_wagon = json::array();
  for (std::size_t w = 0; w < config.target_wagons; ++w) {
    double fill = 0, validation = 0;
    for (const auto& e : episodes) {
      fill += static_cast<double>(e.fill_turns.at(w));
      validation += static_cast<double>(e.validation_turns.at(w));
    }
    const auto n = static_cast<double>(episodes.size());
    per_wagon.push_back(json{{"wagon", w},
                             {"mean_fill_turns", fill / n},
                             {"mean_validation_turns", validation / n}});
  }

  return json{
      {"version", kSimReportVersion},
      {"config", config},
      {"policy", to_string(policy.kind)},
      {"seed", seed},
      {"episodes", stats.episodes},
      {"total_turns", summary_json(stats.total_turns)},
      {"fill_turns", summary_json(stats.fill_turns)},
      {"validation_turns", summary_json(stats.validation_turns)},
      {"per_wagon", per_wagon},
      {"duration",
       json{{"seconds_per_turn", seconds_per_turn},
            {"estimated_minutes", stats.estimated_minutes},
            {"band",
             json{{"seconds_per_turn", {band.low_seconds_per_turn, band.high_seconds_per_turn}},
                  {"minutes", {band.low_minutes, band.high_minutes}}}},
            {"reference_minutes", kReferenceSessionMinutes},
            {"reference_note",
             "wall-clock length of one in-person session, discussion included; a calibration "
             "point, not a prediction"}}},
  };
}

std::string episodes_csv(std::span<const EpisodeStats> episodes) {
  std::ostringstream out;
  out << "episode,seed,total_turns,fill_turns,validation_turns,wagons_validated\n";
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    const auto& e = episodes[i];
    out << i << ',' << e.seed << ',' << e.total_turns << ',' << sum(e.fill_turns) << ','
        << sum(e.validation_turns) << ',' << e.wagons_validated << '\n';
  }
  return out.str();
}

}  // namespace blocktrain
