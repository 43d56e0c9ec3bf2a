#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace nact {

/// A variable of the object language. Index 0 displays as `x`, index n as `xn`.
struct VarName {
  std::uint32_t index = 0;

  std::string display() const;
  friend auto operator<=>(const VarName&, const VarName&) = default;
};

inline constexpr VarName kX{0};

class Formula;
class Term;

namespace detail {
struct TermNode;
struct FormulaNode;
struct Factory;
}  // namespace detail

/// Class term: a variable, a class abstraction, or a reference to a named
/// library term. Immutable and cheap to copy (shared node).
///
/// `operator==` is alpha-equivalence; `identical` is exact structural
/// equality including binder names and the abstraction rendering flag.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Abstraction, Named };

  static Term var(VarName v);
  static Term var(std::uint32_t index) { return var(VarName{index}); }
  /// `restricted` selects the `{|x: ...|}` rendering.
  static Term abstraction(VarName v, Formula body, bool restricted);
  static Term named(std::string name, std::vector<Term> args = {});

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_abstraction() const { return kind() == Kind::Abstraction; }
  bool is_named() const { return kind() == Kind::Named; }

  /// The variable of a Var term, or the binder of an abstraction.
  VarName var() const;
  const Formula& body() const;
  bool restricted() const;
  const std::string& name() const;
  std::span<const Term> args() const;

  std::size_t hash() const;
  std::size_t size() const;
  std::span<const std::uint32_t> free_vars() const;
  bool has_free(VarName v) const;
  bool closed() const { return free_vars().empty(); }

  bool identical(const Term& other) const;
  const void* node_id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  friend struct detail::Factory;
  explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

/// Formula of the membership language. The core connectives are Not, And and
/// ForAll; Or/Implies/Iff/Exists/Equal and Fund are surface forms removed by
/// `expand`.
class Formula {
 public:
  enum class Kind : std::uint8_t {
    Verum,
    Falsum,
    Member,
    Equal,
    Set,
    Slim,
    Fund,
    Not,
    And,
    Or,
    Implies,
    Iff,
    ForAll,
    Exists,
  };

  static Formula verum();
  static Formula falsum();
  static Formula member(Term lhs, Term rhs);
  static Formula equal(Term lhs, Term rhs);
  static Formula set(Term t);
  static Formula slim(Term t);
  static Formula fund(Term t);
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula forall(VarName v, Formula body);
  static Formula exists(VarName v, Formula body);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool is_atom() const;
  bool is_binder() const { return is(Kind::ForAll) || is(Kind::Exists); }

  /// Atom arguments (Member/Equal: lhs, rhs; Set/Slim/Fund: one term).
  std::span<const Term> terms() const;
  const Term& lhs() const { return terms()[0]; }
  const Term& rhs() const { return terms()[1]; }
  const Term& arg() const { return terms()[0]; }
  /// Sub-formulas (Not: one; binary connectives: two; binders: body).
  std::span<const Formula> children() const;
  const Formula& child() const { return children()[0]; }
  const Formula& left() const { return children()[0]; }
  const Formula& right() const { return children()[1]; }
  const Formula& body() const { return children()[0]; }
  VarName var() const;

  std::size_t hash() const;
  /// Node count: every formula node and every term node counts one.
  std::size_t size() const;
  std::span<const std::uint32_t> free_vars() const;
  bool has_free(VarName v) const;
  bool closed() const { return free_vars().empty(); }

  bool identical(const Formula& other) const;
  const void* node_id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  friend struct detail::Factory;
  explicit Formula(std::shared_ptr<const detail::FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::FormulaNode> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// ---------------------------------------------------------------------------
// Operations

/// Capture-avoiding substitution of `t` for the free occurrences of `v`.
Formula substitute(const Formula& f, VarName v, const Term& t);
Term substitute(const Term& s, VarName v, const Term& t);
/// Simultaneous capture-avoiding substitution.
Formula substitute(const Formula& f, const std::map<std::uint32_t, Term>& sigma);
Term substitute(const Term& s, const std::map<std::uint32_t, Term>& sigma);

/// Smallest variable index strictly above every variable (free or bound)
/// occurring in the given formulas/terms.
std::uint32_t fresh_index(std::span<const Formula> fs, std::span<const Term> ts = {});
std::uint32_t max_var_index(const Formula& f);
std::uint32_t max_var_index(const Term& t);

/// Removes surface sugar: or, implies, iff, exists, equality (by
/// extensionality) and fund. Named terms are left in place.
Formula expand(const Formula& f);
Term expand(const Term& t);
/// True iff the formula uses only Verum, Falsum, Member, Set, Slim, Not,
/// And, ForAll (recursively, including abstraction bodies).
bool is_core(const Formula& f);

/// True iff the only free variable (if any) is `x`.
bool is_parameter_free(const Formula& f);

/// Renames every binder to a depth-determined index above the free
/// variables, so alpha-equivalent formulas become identical.
Formula canonicalize(const Formula& f);

/// Distinct sub-formulas (including `f` itself), in pre-order of first
/// occurrence. Abstraction bodies are included.
std::vector<Formula> subformulas(const Formula& f);

/// True if `f` mentions a Set atom anywhere, including inside terms.
bool contains_set_atom(const Formula& f);

/// True if some sub-formula of `haystack` is an alpha-variant of `needle`
/// with its parameter `x` renamed to an arbitrary variable.
bool contains_instance(const Formula& haystack, const Formula& needle);

/// Every term occurring in `f` (including nested ones), pre-order, distinct.
std::vector<Term> subterms(const Formula& f);

// Convenience builders used throughout the code base.
Formula conj_all(std::span<const Formula> fs);
Formula disj_all(std::span<const Formula> fs);

}  // namespace nact

template <>
struct std::hash<nact::Term> {
  std::size_t operator()(const nact::Term& t) const { return t.hash(); }
};
template <>
struct std::hash<nact::Formula> {
  std::size_t operator()(const nact::Formula& f) const { return f.hash(); }
};
