#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nact/errors.hpp"
#include "nact/formula.hpp"
#include "nact/prover.hpp"
#include "nact/schemata.hpp"

namespace nact {

enum class VerdictKind { Inconsistent, Unknown, SAValid, NSAValidSet };
std::string_view verdict_name(VerdictKind k);
std::optional<VerdictKind> verdict_from_name(std::string_view name);

/// One prover call made while classifying.
struct Attempt {
  std::string name;  // "falsum", "SA" or "not SA"
  Formula goal;
  ProofStatus status = ProofStatus::OutOfBudget;
  std::size_t steps_used = 0;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::vector<Formula> axioms;
  std::vector<Attempt> attempts;
  /// The deciding proof. For Inconsistent found as SA plus not SA, `evidence`
  /// proves SA and `counter` proves its negation.
  std::optional<ProofResult> evidence;
  std::optional<ProofResult> counter;
  std::size_t steps_used = 0;  // over all attempts
};

/// Inconsistent, SAValid, NSAValidSet or Unknown, tried in that order with the
/// same budget per attempt. Throws NotParameterFree, and SideConditionViolated
/// when the system refuses a. With meta_singsa, SiNGSA instances are dropped
/// when refute_sethood(a) succeeds within the budget.
Verdict classify_sa(const Formula& a, const SystemSpec& system, const ProofBudget& budget = {});

/// Bounded under-approximation of hereditary non-pathology: no parameter-free
/// subformula b of a has refute_sethood(b) Proved within the budget.
bool hnp_bounded(const Formula& a, const ProofBudget& budget = {});

/// The body whose class is Ko(Ru).
Formula ko_ru_body();

enum class ClaimOutcome { Confirmed, Refuted, Unknown };
std::string_view claim_outcome_name(ClaimOutcome c);

struct KoRuRow {
  std::string system;
  ProofStatus member;      // Ko(Ru) in Ko(Ru)
  ProofStatus non_member;  // not Ko(Ru) in Ko(Ru)
  ProofStatus is_set;      // set(Ko(Ru))
  std::string claim;       // what the text claims for this system
  ClaimOutcome outcome = ClaimOutcome::Unknown;
  ClaimOutcome set_outcome = ClaimOutcome::Unknown;
};

/// The four NSA systems against the membership and sethood claims for Ko(Ru).
std::vector<KoRuRow> ko_ru_case_table(const ProofBudget& budget = {});

}  // namespace nact
