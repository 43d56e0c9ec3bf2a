#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nact/ledger.hpp"

using namespace nact;
namespace fs = std::filesystem;

namespace {

ProofBudget steps(std::size_t n) {
  ProofBudget b;
  b.max_steps = n;
  return b;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

class LedgerFile : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nact-ledger-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(LedgerFile, ConservationAndQuarantine) {
  const LedgerReport r = run_ledger(*preset("NACT-SiNSA"), 120, steps(300), (dir_ / "l").string());
  EXPECT_EQ(r.enumerated, 120u);
  EXPECT_EQ(r.classified + r.skipped, r.enumerated);
  ASSERT_GT(r.counts.at("Inconsistent"), 0u);
  ASSERT_EQ(r.ratio.size(), 120u);
  for (const LedgerRecord& rec : r.records) {
    if (rec.quarantined_by) {
      EXPECT_TRUE(rec.verdict.empty());
      EXPECT_LT(*rec.quarantined_by, rec.index);
      EXPECT_EQ(r.records[*rec.quarantined_by].verdict, "Inconsistent");
    }
  }
  // the file reads back to the same report
  const LedgerReport back = load_ledger((dir_ / "l").string());
  EXPECT_EQ(back.counts, r.counts);
  EXPECT_EQ(back.ratio, r.ratio);
}

TEST_F(LedgerFile, ResumeIsByteIdentical) {
  const auto sys = *preset("NACT-SiNSA");
  run_ledger(sys, 90, steps(300), (dir_ / "a").string());
  run_ledger(sys, 31, steps(300), (dir_ / "b").string());
  run_ledger(sys, 90, steps(300), (dir_ / "b").string());
  EXPECT_EQ(slurp(dir_ / "a"), slurp(dir_ / "b"));
  // asking for fewer than present changes nothing
  run_ledger(sys, 50, steps(300), (dir_ / "b").string());
  EXPECT_EQ(slurp(dir_ / "a"), slurp(dir_ / "b"));
}

TEST_F(LedgerFile, InMemoryRunMatchesFile) {
  const auto sys = *preset("NACT-PriNSA");
  const LedgerReport mem = run_ledger(sys, 40, steps(200));
  const LedgerReport file = run_ledger(sys, 40, steps(200), (dir_ / "l").string());
  EXPECT_EQ(mem.counts, file.counts);
  EXPECT_EQ(mem.cursor, 40u);
}

TEST_F(LedgerFile, EditedFileIsCorrupt) {
  const auto sys = *preset("NACT-PriNSA");
  const fs::path p = dir_ / "l";
  run_ledger(sys, 20, steps(200), p.string());
  const std::string good = slurp(p);

  std::string edited = good;
  const auto at = edited.find("\"SAValid\"");
  ASSERT_NE(at, std::string::npos);
  edited.replace(at, 9, "\"Unknown\"");
  spit(p, edited);
  EXPECT_THROW(run_ledger(sys, 30, steps(200), p.string()), CorruptLedger);
  EXPECT_THROW(load_ledger(p.string()), CorruptLedger);

  // a dropped line in the middle breaks the chain too
  std::string dropped = good;
  const auto line2 = dropped.find('\n') + 1;
  dropped.erase(line2, dropped.find('\n', line2) + 1 - line2);
  spit(p, dropped);
  EXPECT_THROW(load_ledger(p.string()), CorruptLedger);

  spit(p, "not json\n");
  EXPECT_THROW(load_ledger(p.string()), CorruptLedger);
}

TEST_F(LedgerFile, ResumeNeedsSameSystemAndBudget) {
  const fs::path p = dir_ / "l";
  run_ledger(*preset("NACT-PriNSA"), 10, steps(200), p.string());
  EXPECT_THROW(run_ledger(*preset("NACT-SiNSA"), 20, steps(200), p.string()), CorruptLedger);
  EXPECT_THROW(run_ledger(*preset("NACT-PriNSA"), 20, steps(201), p.string()), CorruptLedger);
}

TEST(Degree, RatioAndTail) {
  LedgerReport r;
  r.ratio = {0.0, 0.5, 1.0 / 3, 0.25};
  DegreeConfig cfg;
  cfg.window = 2;
  cfg.epsilon = 0.2;
  const Degree d = degree(r, cfg);
  EXPECT_DOUBLE_EQ(d.final_estimate, 0.25);
  EXPECT_DOUBLE_EQ(d.tail_average, (1.0 / 3 + 0.25) / 2);
  EXPECT_FALSE(d.nearly_consistent);
  EXPECT_FALSE(d.hypothesis.empty());
  EXPECT_THROW(degree(LedgerReport{}), std::invalid_argument);
}
