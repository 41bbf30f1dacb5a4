#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "blocktrain/errors.hpp"
#include "blocktrain/ledger_file.hpp"
#include "blocktrain/service/ledger_report.hpp"
#include "blocktrain/sim.hpp"

namespace blocktrain::service {
namespace {

std::filesystem::path fresh(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "blocktrain_service_tests";
  std::filesystem::create_directories(dir);
  std::filesystem::remove(dir / name);
  return dir / name;
}

TEST(PersistAndVerifyTest, FreshLedgerIsAllValid) {
  const auto path = fresh("fresh.jsonl");
  LedgerWriter writer(path);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    writer.append(run_episode(GameConfig::standard(3), Policy::uniform_random(), seed).second);
  }
  const auto report = persist_and_verify(path);
  ASSERT_EQ(report.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(report[i].chain, i);
    EXPECT_EQ(report[i].blocks, 5u);
    EXPECT_TRUE(report[i].result.valid);
  }
  EXPECT_TRUE(all_valid(report));
}

TEST(PersistAndVerifyTest, OneHexDigitEditIsCaughtAtThatChainAndBlock) {
  const auto path = fresh("edited.jsonl");
  std::vector<Chain> chains;
  for (std::uint64_t seed = 10; seed < 12; ++seed) {
    chains.push_back(run_episode(GameConfig::standard(2), Policy::uniform_random(), seed).second);
  }
  // Edit the stored hash of chain 1, block 3 in the file text.
  std::string text = ledger_text(chains[0]) + ledger_text(chains[1]);
  const std::string& hash = chains[1].blocks[3].hash;
  const auto pos = text.find("\"hash\":\"" + hash);
  ASSERT_NE(pos, std::string::npos);
  char& digit = text[pos + 8 + 10];
  digit = digit == '0' ? '1' : '0';
  std::ofstream(path) << text;

  const auto report = persist_and_verify(path);
  ASSERT_EQ(report.size(), 2u);
  EXPECT_TRUE(report[0].result.valid);
  EXPECT_FALSE(report[1].result.valid);
  EXPECT_EQ(report[1].result.first_bad_index, 3u);
  EXPECT_FALSE(all_valid(report));
}

TEST(PersistAndVerifyTest, EmptyAndMissingFiles) {
  const auto path = fresh("empty.jsonl");
  std::ofstream(path).close();
  EXPECT_TRUE(persist_and_verify(path).empty());
  EXPECT_TRUE(all_valid(persist_and_verify(fresh("missing.jsonl"))));
}

TEST(PersistAndVerifyTest, GarbageIsMalformedLedger) {
  const auto path = fresh("garbage.jsonl");
  std::ofstream(path) << "{\"index\":0}\nnot json\n";
  try {
    persist_and_verify(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedLedger);
  }
}

}  // namespace
}  // namespace blocktrain::service
