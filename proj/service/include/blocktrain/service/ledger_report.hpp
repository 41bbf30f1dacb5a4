#pragma once

#include <filesystem>
#include <vector>

#include "blocktrain/chain.hpp"

namespace blocktrain::service {

struct ChainReport {
  std::size_t chain = 0;
  std::size_t blocks = 0;
  VerifyResult result;
  friend bool operator==(const ChainReport&, const ChainReport&) = default;
};

/// verify_chain over every chain stored in a ledger_v1 file, in file order.
/// A missing or empty file gives an empty report. Throws MalformedLedger.
std::vector<ChainReport> persist_and_verify(const std::filesystem::path& ledger);

bool all_valid(const std::vector<ChainReport>& report);

}  // namespace blocktrain::service
