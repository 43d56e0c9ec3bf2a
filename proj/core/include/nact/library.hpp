#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nact/formula.hpp"

namespace nact {

/// Library entry for a named class term, referenced in the concrete syntax
/// as `$name` or `$name(t, ...)`.
struct NamedTermInfo {
  std::string name;
  std::size_t arity;
  std::string description;
};

/// All library terms, in a fixed display order.
const std::vector<NamedTermInfo>& named_terms();
const NamedTermInfo* find_named(std::string_view name);

/// Unfolds one level of a named term into its defining abstraction. Returns
/// nullopt for unknown names or arity mismatches.
std::optional<Term> definition(const Term& named);

/// Replaces every named term by its definition, recursively.
Formula unfold_named(const Formula& f);
Term unfold_named(const Term& t);

/// For a class term (abstraction or known named term), the defining
/// abstraction; nullopt for variables and unknown names.
std::optional<Term> as_abstraction(const Term& t);

namespace lib {

Term empty();                           // $0   = {x: not x = x}
Term universe();                        // $V   = {x: x = x}
Term russell();                         // $Ru  = {x: not x in x}
Term russell2();                        // $Ru2 = {|x: not exists y (x in y and y in x)|}
Term complement(const Term& t);         // $Ko(t)
Term singleton(const Term& t);          // $sing(t) = {x: x = t}
Term pair(const Term& a, const Term& b);  // $pair(a, b)
Term singletons();                      // $si
Term singletons_prime();                // $si'
Term successor(const Term& t);          // $succ(t) = t u {t}
Term omega();                           // $Omega
Term ordinals();                        // $On
Term power(const Term& t);              // $Power(t)
Term big_union(const Term& t);          // $Union(t)
Term ordered_pair(const Term& a, const Term& b);  // $opair(a, b)
Term image(const Term& f, const Term& d);         // $Image(f, d)

/// Function(f): every element is an ordered pair and the pairs are functional.
Formula function(const Term& f);
/// Trans(t): every element of an element of t is in t.
Formula transitive(const Term& t);
/// Mighty(t) as slim complement.
Formula mighty(const Term& t);

}  // namespace lib

}  // namespace nact
