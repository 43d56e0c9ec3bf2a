#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nact/formula.hpp"

namespace nact {

struct ProofBudget {
  std::size_t max_steps = 50000;
  /// Longest chain of equality substitutions feeding one formula.
  std::size_t max_equality_depth = 8;
  /// Terms larger than this are never added to the instantiation pool.
  std::size_t max_term_size = 64;
};

enum class ProofStatus { Proved, Refuted, OutOfBudget };
std::string_view status_name(ProofStatus s);

/// Inference rules of the tableau. Assume, NegateGoal and Branch are
/// bookkeeping and do not count against the budget.
enum class Rule : std::uint8_t {
  Assume,        // an axiom
  NegateGoal,    // the negated goal
  DoubleNeg,     // not not A / A
  AndElim,       // A and B / A, B
  NotOr,         // not (A or B) / not A, not B
  NotImplies,    // not (A implies B) / A, not B
  Delta,         // not forall x A, exists x A / set(c), [not] A(c) for fresh c
  NotEqual,      // not t = s / set(c), not (c in t iff c in s) for fresh c
  ClassIn,       // t in {x: A} / set(t), A(t)
  MemberSet,     // t in s / set(t)
  FundUnfold,    // [not] fund(t) / [not] exists y (y in t and forall w not (w in y and w in t))
  EqSym,         // t = s / s = t
  Leibniz,       // t = s, L / L with t replaced by s in some argument positions
  Gamma,         // forall x A (or not exists x A), set(t) / A(t) (or not A(t))
  Domain,        // / set(c) for fresh c (the universe of sets is nonempty)
  SingletonSet,  // set(t) / set($sing(t))
  PairSet,       // set(a), set(b) / set($pair(a, b))
  BetaUnit,      // beta formula, refuters of all but one alternative / that alternative
  Split,         // beta formula / one child branch per alternative
  Cut,           // / s in T | not s in T
  Branch,        // opens a child branch with its alternative
  Close,         // contradiction on the branch
};
std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

/// Reference to one conclusion of an earlier step.
struct FormulaRef {
  std::uint32_t step = 0;
  std::uint32_t index = 0;
  friend bool operator==(const FormulaRef&, const FormulaRef&) = default;
};

struct TraceStep {
  std::uint32_t id = 0;
  std::uint32_t branch = 0;
  Rule rule = Rule::Assume;
  std::vector<FormulaRef> premises;
  std::vector<Formula> conclusions;
  /// Split/Cut: the child branches and the formulas each one starts with.
  std::vector<std::uint32_t> children;
  std::vector<std::vector<Formula>> alternatives;
  /// Eigenvariable (Delta, NotEqual, Domain) or instance term (Gamma).
  std::optional<Term> witness;
};

struct ProofResult {
  ProofStatus status = ProofStatus::OutOfBudget;
  std::size_t steps_used = 0;
  std::vector<TraceStep> trace;
  /// For Refuted the trace proves the negation of the goal.
  std::optional<Formula> proved;
  /// True when some branch was completed without closing.
  bool saturated = false;
  /// True when the trace relies on the singleton/pair sethood rules.
  bool uses_singleton_pair = false;
};

/// Budgeted tableau search for axioms |- goal. Deterministic; a larger budget
/// never changes a Proved result or its step count.
ProofResult prove(const std::vector<Formula>& axioms, const Formula& goal,
                  const ProofBudget& budget = {});

/// Tries to derive falsum from set({|x: a|}) in the bare frame.
ProofResult refute_sethood(const Formula& a, const ProofBudget& budget = {});

/// Number of budget-relevant steps in a trace.
std::size_t counted_steps(const std::vector<TraceStep>& trace);

/// Human-readable trace, one step per line.
std::string trace_to_text(const std::vector<TraceStep>& trace);

}  // namespace nact
