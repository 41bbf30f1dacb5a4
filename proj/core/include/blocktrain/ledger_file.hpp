#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "blocktrain/chain.hpp"

namespace blocktrain {

// ledger_v1: one JSON object per line holding exactly the Block fields, keys
// sorted. Chains are stored back to back; a line with "index": 0 starts a
// new chain. Files are only ever appended to.

/// The ledger_v1 line for a block, without the trailing newline.
std::string ledger_line(const Block& block);

/// All lines of a chain, each terminated by '\n'.
std::string ledger_text(const Chain& chain);

/// Parses ledger_v1 text. Blank lines are ignored. Throws MalformedLedger
/// with the 1-based line number of the first unparsable line.
std::vector<Chain> parse_ledger(const std::string& text);

/// Reads and parses a ledger file; a missing file is an empty ledger.
std::vector<Chain> load_ledger(const std::filesystem::path& path);

/// Overwrites `path` with the given chains. Used by tooling that produces a
/// modified copy, never by the live appender.
void write_ledger(const std::filesystem::path& path, const std::vector<Chain>& chains);

/// Single appender for a ledger file. Each chain is written with one
/// write call and flushed, so readers never see a partial line.
class LedgerWriter {
 public:
  explicit LedgerWriter(std::filesystem::path path);

  void append(const Chain& chain);

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mu_;
};

}  // namespace blocktrain
