#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "nact/formula.hpp"

namespace nact {

/// Raised for malformed concrete syntax; `offset` is the byte position of
/// the offending token (the input length when input ended early).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Concrete grammar (whitespace-insensitive):
///
///   formula  := 'forall' var ':' formula | 'exists' var ':' formula | iff
///   iff      := implies [ 'iff' implies ]
///   implies  := or [ 'implies' implies ]
///   or       := and { 'or' and }
///   and      := unary { 'and' unary }
///   unary    := 'not' unary | 'forall' ... | 'exists' ... | primary
///   primary  := 'true' | 'false' | '(' formula ')'
///             | ('set' | 'slim' | 'fund') '(' term ')'
///             | term 'in' term | term '=' term
///   term     := var | '{' var ':' formula '}' | '{|' var ':' formula '|}'
///             | '$' name [ '(' term { ',' term } ')' ]
///   var      := 'x' | 'x' digits
///
/// Quantifier bodies extend as far to the right as possible.
Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

/// Parses either a formula or (if the whole input is a term) a term.
std::variant<Formula, Term> parse(std::string_view text);

/// Canonical rendering; `parse_formula(to_string(f))` is identical to `f`.
std::string to_string(const Formula& f);
std::string to_string(const Term& t);

}  // namespace nact
