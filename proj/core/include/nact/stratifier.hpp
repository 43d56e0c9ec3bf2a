#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nact/formula.hpp"

namespace nact {

/// One typing constraint: type(hi) = type(lo) + diff.
struct TypeConstraint {
  std::size_t lo = 0;
  std::size_t hi = 0;
  int diff = 0;
  std::string origin;  // rendered atom or term that produced it
};

/// A typed node: a variable (after renaming binders apart) or an abstraction
/// occurrence.
struct TypeNode {
  enum class Kind { Var, Abstraction } kind = Kind::Var;
  std::uint32_t var = 0;  // variable index (Var) or binder index (Abstraction)
  std::string label;
};

struct StratifyResult {
  bool stratified = false;
  /// The analysed formula: named terms and fund unfolded, binders renamed
  /// apart so that every variable name identifies one node.
  Formula renamed = Formula::verum();
  std::vector<TypeNode> nodes;
  std::vector<TypeConstraint> constraints;
  /// Types per node (minimum 0 in every connected component) when stratified.
  std::vector<int> types;
  /// Constraints along a cycle whose sum is nonzero when not stratified.
  std::vector<TypeConstraint> cycle;
};

/// Decides NF stratification. Membership u in v forces type(v) = type(u)+1,
/// equality forces equal types, an abstraction {y: A} is typed type(y)+1, and
/// set/slim impose nothing. Total.
StratifyResult stratify(const Formula& f);
bool is_stratified(const Formula& f);

/// Re-checks an assignment against every constraint.
bool satisfies(const StratifyResult& r, const std::vector<int>& types);

}  // namespace nact
