#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nact/errors.hpp"
#include "nact/formula.hpp"

namespace nact {

enum class SchemaId : std::uint8_t {
  Axiom5,
  Axiom6,
  Axiom5a,
  Axiom6c,
  Sharp1,
  Sharp2,
  Sharp3,
  Sharp4,
  StratCoS,
  PriNSA,
  SiNSA,
  PriNSA2,
  SiNSA2,
  PriNSA3,  // experimental: disjunctive antecedent, superseded by PriNSA2
  SiNSA3,
  PriNGSA,
  SiNGSA,
  PriNGSA2,
  SiNGSA2,
  PriNSA0,
  ZF1,
  ZF2,
  ZF3,
  ZF4,
  ZF5,
  ZF1R,
  ZF2R,
  ZF3R,
  ZF4R,
  StratAndNSA,
};

const std::vector<SchemaId>& all_schemata();
std::string_view schema_name(SchemaId id);
std::optional<SchemaId> schema_from_name(std::string_view name);

/// Schemata whose antecedent is (generalized) non-self-applicability.
bool is_nsa_schema(SchemaId id);
/// Kept for completeness but not recommended; currently only PriNSA3.
bool is_experimental(SchemaId id);

/// Schemata the finite model checker can interpret.
bool is_model_checkable(SchemaId id);

/// Stored with a system but never used by any inference rule.
enum class ChoiceAxiom : std::uint8_t { None, AC, DC, OrdUC };
std::string_view choice_name(ChoiceAxiom c);

struct SystemSpec {
  std::string name;
  std::set<SchemaId> active;
  bool parameter_free_only = false;
  std::uint32_t gsa_chain_bound = 2;
  /// Block SiNGSA/SiNGSA2 instances for classes already known to be proper.
  bool meta_singsa = false;
  /// Gate classification by the bounded hereditary-non-patho check.
  bool hnp_gate = false;
  ChoiceAxiom choice = ChoiceAxiom::None;

  bool has(SchemaId id) const { return active.count(id) != 0; }
  bool has_nsa() const;
  /// True for systems built on the 2-fold or 3-fold NSA principles.
  bool two_fold() const;
};

const std::vector<SystemSpec>& presets();
std::optional<SystemSpec> preset(std::string_view name);

/// Comprehension term {|x: a|} (restricted, so it unfolds to set(t) and a(t)).
Term comprehension(const Formula& a);
/// {|x: not a|}, used as the complement class of the class of a.
Term complement_class(const Formula& a);

/// SA(a) := a[x := {|x: a|}]. Throws NotParameterFree.
Formula make_sa_formula(const Formula& a);
/// SA(a) or the membership chains of length 1..n_bound ending in a.
/// Throws NotParameterFree, and std::invalid_argument when n_bound == 0.
Formula make_gsa_formula(const Formula& a, std::uint32_t n_bound);

struct SchemaInstance {
  SchemaId schema;
  Formula source;
  std::vector<Formula> result;
  bool side_condition_ok = true;
  std::string reason;
};

struct InstantiateOptions {
  /// Comprehension terms known to denote proper classes (Meta-SiNGSA).
  std::vector<Term> known_proper;
};

/// One instance per active schema (ZF goals are not axioms and are skipped).
/// Throws NotParameterFree when the system demands parameter-free input.
std::vector<SchemaInstance> instantiate(const SystemSpec& system, const Formula& a,
                                        const InstantiateOptions& opts = {});

/// The formulas of all instances whose side condition holds.
std::vector<Formula> axioms_for(const SystemSpec& system, const Formula& a,
                                const InstantiateOptions& opts = {});

enum class ZfVariant { Auto, Plain, Restricted };
/// ZF1..ZF5, or ZF1R..ZF4R for 2-fold systems (Auto), as closed goals.
std::vector<std::pair<std::string, Formula>> zf_targets(const SystemSpec& system,
                                                        ZfVariant variant = ZfVariant::Auto);

}  // namespace nact
