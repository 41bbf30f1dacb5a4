#include "blocktrain/service/ledger_report.hpp"

#include <algorithm>

#include "blocktrain/ledger_file.hpp"

namespace blocktrain::service {

std::vector<ChainReport> persist_and_verify(const std::filesystem::path& ledger) {
  const auto chains = load_ledger(ledger);
  std::vector<ChainReport> report;
  report.reserve(chains.size());
  for (std::size_t i = 0; i < chains.size(); ++i) {
    report.push_back({i, chains[i].blocks.size(), verify_chain(chains[i])});
  }
  return report;
}

bool all_valid(const std::vector<ChainReport>& report) {
  return std::all_of(report.begin(), report.end(),
                     [](const ChainReport& r) { return r.result.valid; });
}

}  // namespace blocktrain::service
