#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nact/errors.hpp"
#include "nact/prover.hpp"
#include "nact/sa_engine.hpp"
#include "nact/schemata.hpp"

namespace nact {

/// One line of the ledger file. A quarantined record has no verdict.
struct LedgerRecord {
  std::size_t index = 0;
  std::string formula;  // canonical text
  std::string system;
  std::string verdict;  // a verdict name, "SideConditionViolated", or empty
  std::size_t steps_used = 0;
  std::optional<std::size_t> quarantined_by;
  std::string reason;  // for side-condition rejections
};

/// Appended after an Inconsistent record for every earlier fact it taints.
struct Withdrawal {
  std::size_t record;
  std::size_t by;
};

struct DegreeConfig {
  double epsilon = 0.001;
  std::size_t window = 100;
};

struct LedgerReport {
  std::string system;
  ProofBudget budget;
  std::map<std::string, std::size_t> counts;  // per verdict
  std::size_t classified = 0;
  std::size_t skipped = 0;
  std::size_t enumerated = 0;
  /// ratio[k-1] = (#Inconsistent among the first k) / k
  std::vector<double> ratio;
  std::size_t cursor = 0;  // next index to process
  std::vector<LedgerRecord> records;
  std::vector<Withdrawal> withdrawals;
};

/// Classifies the first `count` enumerated formulas in order, quarantining
/// every later formula that contains an Inconsistent one. With a path the
/// records are appended to that file, resuming from its cursor when it
/// already holds records. Throws CorruptLedger when the file fails its checks
/// or was written for another system or budget.
LedgerReport run_ledger(const SystemSpec& system, std::size_t count, const ProofBudget& budget,
                        const std::optional<std::string>& path = std::nullopt);

/// Reads and verifies a ledger file.
LedgerReport load_ledger(const std::string& path);

struct Degree {
  std::vector<double> series;
  double final_estimate = 0.0;
  double tail_average = 0.0;
  bool nearly_consistent = false;
  std::string hypothesis;  // reported, never derived from the data
};
Degree degree(const LedgerReport& report, const DegreeConfig& cfg = {});

/// The ledger format version written in the header line.
inline constexpr int kLedgerVersion = 1;

}  // namespace nact
