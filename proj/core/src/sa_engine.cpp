#include "nact/sa_engine.hpp"

#include <array>

#include "nact/library.hpp"
#include "nact/syntax.hpp"

namespace nact {

using F = Formula;

namespace {

constexpr std::array<std::string_view, 4> kVerdictNames{"Inconsistent", "Unknown", "SAValid",
                                                        "NSAValidSet"};

bool proved(const ProofResult& r) { return r.status == ProofStatus::Proved; }

// Side conditions of the NSA-style schemata of the system.
void check_side_conditions(const Formula& a, const SystemSpec& system) {
  for (const SchemaInstance& inst : instantiate(system, a)) {
    if (!inst.side_condition_ok && is_nsa_schema(inst.schema)) {
      throw SideConditionViolated(std::string(schema_name(inst.schema)) + ": " + inst.reason);
    }
  }
  if (system.hnp_gate && !hnp_bounded(a, ProofBudget{})) {
    throw SideConditionViolated("a subformula generates a refutable set");
  }
}

}  // namespace

std::string_view verdict_name(VerdictKind k) { return kVerdictNames[static_cast<std::size_t>(k)]; }

std::optional<VerdictKind> verdict_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kVerdictNames.size(); ++i) {
    if (kVerdictNames[i] == name) return static_cast<VerdictKind>(i);
  }
  return std::nullopt;
}

Verdict classify_sa(const Formula& a, const SystemSpec& system, const ProofBudget& budget) {
  if (!is_parameter_free(a)) throw NotParameterFree(to_string(a));
  check_side_conditions(a, system);

  Verdict v;
  // Meta-SiNGSA: a class whose sethood the bare frame refutes gets no SiNGSA instance
  InstantiateOptions opts;
  if (system.meta_singsa && proved(refute_sethood(a, budget))) opts.known_proper.push_back(comprehension(a));
  v.axioms = axioms_for(system, a, opts);
  auto attempt = [&](std::string name, const F& goal) {
    ProofResult r = prove(v.axioms, goal, budget);
    v.attempts.push_back({std::move(name), goal, r.status, r.steps_used});
    v.steps_used += r.steps_used;
    return r;
  };

  ProofResult bottom = attempt("falsum", F::falsum());
  if (proved(bottom)) {
    v.kind = VerdictKind::Inconsistent;
    v.evidence = std::move(bottom);
    return v;
  }
  const F sa = make_sa_formula(a);
  ProofResult yes = attempt("SA", sa);
  ProofResult no = attempt("not SA", F::negate(sa));
  if (proved(yes) && proved(no)) {
    // both directions: the instances are contradictory after all
    v.kind = VerdictKind::Inconsistent;
    v.evidence = std::move(yes);
    v.counter = std::move(no);
  } else if (proved(yes)) {
    v.kind = VerdictKind::SAValid;
    v.evidence = std::move(yes);
  } else if (proved(no)) {
    v.kind = VerdictKind::NSAValidSet;
    v.evidence = std::move(no);
  } else {
    v.kind = VerdictKind::Unknown;
  }
  return v;
}

bool hnp_bounded(const Formula& a, const ProofBudget& budget) {
  for (const F& b : subformulas(a)) {
    if (!is_parameter_free(b)) continue;
    if (proved(refute_sethood(b, budget))) return false;
  }
  return true;
}

Formula ko_ru_body() { return F::negate(F::member(Term::var(0), lib::russell())); }

std::string_view claim_outcome_name(ClaimOutcome c) {
  switch (c) {
    case ClaimOutcome::Confirmed:
      return "confirmed";
    case ClaimOutcome::Refuted:
      return "refuted";
    case ClaimOutcome::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::vector<KoRuRow> ko_ru_case_table(const ProofBudget& budget) {
  struct Case {
    const char* system;
    const char* claim;
    int member;  // +1 claims membership, -1 non-membership, 0 both possible
  };
  const std::array<Case, 4> cases{{
      {"NACT-PriNSA", "both directions possible", 0},
      {"NACT-SiNSA", "Ko(Ru) not in Ko(Ru)", -1},
      {"NACT-PriNSA2", "Ko(Ru) in Ko(Ru)", 1},
      {"NACT-SiNSA2", "Ko(Ru) in Ko(Ru)", 1},
  }};
  const F a = ko_ru_body();
  const Term k = comprehension(a);
  const F in = F::member(k, k);
  std::vector<KoRuRow> out;
  for (const Case& c : cases) {
    const SystemSpec sys = *preset(c.system);
    const std::vector<F> axioms = axioms_for(sys, a);
    KoRuRow row;
    row.system = c.system;
    row.claim = c.claim;
    row.member = prove(axioms, in, budget).status;
    row.non_member = prove(axioms, F::negate(in), budget).status;
    row.is_set = prove(axioms, F::set(k), budget).status;
    const bool yes = row.member == ProofStatus::Proved || row.non_member == ProofStatus::Refuted;
    const bool no = row.non_member == ProofStatus::Proved || row.member == ProofStatus::Refuted;
    if (c.member == 0) {
      // only a proof of one direction can speak against "both possible"
      row.outcome = yes || no ? ClaimOutcome::Refuted : ClaimOutcome::Unknown;
    } else {
      const bool claimed = c.member > 0 ? yes : no;
      const bool denied = c.member > 0 ? no : yes;
      row.outcome = claimed && !denied   ? ClaimOutcome::Confirmed
                    : denied && !claimed ? ClaimOutcome::Refuted
                                         : ClaimOutcome::Unknown;
    }
    row.set_outcome = row.is_set == ProofStatus::Proved    ? ClaimOutcome::Confirmed
                      : row.is_set == ProofStatus::Refuted ? ClaimOutcome::Refuted
                                                           : ClaimOutcome::Unknown;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace nact
