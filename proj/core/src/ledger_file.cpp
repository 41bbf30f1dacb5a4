#include "blocktrain/ledger_file.hpp"

#include <fstream>
#include <sstream>

#include "blocktrain/errors.hpp"
#include "blocktrain/serialize.hpp"

namespace blocktrain {

std::string ledger_line(const Block& block) { return nlohmann::json(block).dump(); }

std::string ledger_text(const Chain& chain) {
  std::string out;
  for (const auto& block : chain.blocks) {
    out += ledger_line(block);
    out += '\n';
  }
  return out;
}

std::vector<Chain> parse_ledger(const std::string& text) {
  std::vector<Chain> chains;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Block block;
    try {
      nlohmann::json::parse(line).get_to(block);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::MalformedLedger,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (block.index == 0 || chains.empty()) chains.emplace_back();
    chains.back().blocks.push_back(std::move(block));
  }
  return chains;
}

std::vector<Chain> load_ledger(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (!std::filesystem::exists(path)) return {};
    throw Error(ErrorCode::MalformedLedger, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ledger(buf.str());
}

void write_ledger(const std::filesystem::path& path, const std::vector<Chain>& chains) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  for (const auto& chain : chains) out << ledger_text(chain);
  if (!out) throw std::runtime_error("failed to write " + path.string());
}

LedgerWriter::LedgerWriter(std::filesystem::path path) : path_(std::move(path)) {}

void LedgerWriter::append(const Chain& chain) {
  const std::string text = ledger_text(chain);
  std::lock_guard lock(mu_);
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw std::runtime_error("failed to append to " + path_.string());
}

}  // namespace blocktrain
