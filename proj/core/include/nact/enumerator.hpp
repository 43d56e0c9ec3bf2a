#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "nact/errors.hpp"
#include "nact/formula.hpp"

namespace nact {

/// Ordering parameters of the formula production system.
struct EnumOptions {
  /// Number of free variables x, x1, ... allowed at the top level. The
  /// default 1 gives the parameter-free stream; wider alphabets are allowed
  /// but not exercised by the tests.
  std::uint32_t parameters = 1;
  /// Stop after formulas of this node count (0 = unbounded).
  std::size_t max_len = 0;
};

namespace detail {
struct EnumCache;
}

/// Deterministic stream of canonical core formulas in increasing node count.
///
/// Canonical form: only Verum/Falsum (as whole formulas), membership between
/// variables, not, and, forall. The binder at nesting depth d is
/// x_{p+d} (p = number of parameters), and every quantifier binds a variable
/// that occurs in its body. Within a node count, formulas are ordered by
/// constructor (Verum < Falsum < Member < Not < And < ForAll), then children
/// left to right (size first, then recursively), then variable indices.
class FormulaStream {
 public:
  explicit FormulaStream(EnumOptions opts = {});

  /// Next formula, or nullopt once max_len is exceeded.
  std::optional<Formula> next();
  std::size_t position() const { return pos_; }
  void seek(std::size_t pos);
  const EnumOptions& options() const { return opts_; }

 private:
  EnumOptions opts_;
  std::shared_ptr<detail::EnumCache> cache_;
  std::size_t pos_ = 0;
  std::size_t size_ = 1;      // size class of the cursor
  std::size_t in_size_ = 0;   // offset inside the size class
  std::size_t before_ = 0;    // formulas in smaller size classes
};

/// The first k formulas of the stream.
std::vector<Formula> enumerate(std::size_t k, EnumOptions opts = {});

/// Number of canonical formulas with exactly `size` nodes.
std::size_t count_of_size(std::size_t size, EnumOptions opts = {});

/// True if `f` is in the canonical form emitted by the stream.
bool is_enumerator_canonical(const Formula& f, EnumOptions opts = {});

/// Position of `f` in the stream. Throws NotCanonical otherwise.
std::size_t index_of(const Formula& f, EnumOptions opts = {});

/// Brings a core formula (only not/and/forall/membership between variables,
/// or a lone Verum/Falsum) into the canonical binder numbering.
Formula enumerator_normal_form(const Formula& f, EnumOptions opts = {});

}  // namespace nact
