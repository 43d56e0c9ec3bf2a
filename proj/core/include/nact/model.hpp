#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nact/errors.hpp"
#include "nact/formula.hpp"
#include "nact/schemata.hpp"

namespace nact {

/// A subclass of the universe, bit i standing for element i.
using ClassMask = std::uint32_t;

/// Elements 0..n-1, each a set whose extension is ext[i]. ext must be
/// injective (extensionality). Text form: "n:row0/row1/..." where character j
/// of row i is '1' iff element j is in ext[i].
struct FiniteModel {
  std::uint32_t n = 1;
  std::vector<ClassMask> ext;

  ClassMask universe() const { return n >= 32 ? ~ClassMask{0} : (ClassMask{1} << n) - 1; }
  bool valid() const;
  /// Whether the class is the extension of some element.
  bool is_set(ClassMask c) const;
  /// The element with this extension, or -1.
  int element_of(ClassMask c) const;

  std::string to_text() const;
  static FiniteModel from_text(std::string_view text);  // throws std::invalid_argument

  friend bool operator==(const FiniteModel&, const FiniteModel&) = default;
};

/// Value of a variable: an element of the universe, or (for schema checks) a
/// whole class.
struct Binding {
  std::uint32_t var;
  bool is_class;
  std::uint32_t value;
};
using Env = std::vector<Binding>;

/// Classical satisfaction. Quantifiers range over elements; abstraction terms
/// denote subclasses. Throws UnboundVariable for a free variable missing in env.
bool eval(const FiniteModel& m, const Formula& f, const Env& env = {});
ClassMask eval_class(const FiniteModel& m, const Term& t, const Env& env = {});

enum class SizeKind { Slim, Medium, Mighty };
std::string_view size_name(SizeKind k);

struct ClassKind {
  SizeKind size = SizeKind::Slim;
  bool medium_c = false;   // Medium, and both it and its complement are sets
  bool medium_nc = false;  // Medium, otherwise
};
ClassKind classify(const FiniteModel& m, ClassMask c);

struct Violation {
  SchemaId schema;
  ClassMask cls;
};

struct SystemCheck {
  bool holds = true;
  std::vector<Violation> counterexamples;
  /// Where a construction is not realized inside the model.
  std::vector<std::string> partial;
};

/// The model-level form of a schema, with var 0 standing for the class X.
Formula schema_axiom(SchemaId id);

/// Evaluates every active schema for every class of m. Throws
/// NotModelCheckable for schemata defined through provability.
SystemCheck check_system(const FiniteModel& m, const SystemSpec& system);

/// All models with exactly n elements, in canonical order (ext rows as numbers,
/// lexicographically). n <= 4.
std::vector<FiniteModel> all_models(std::uint32_t n);

/// All models with 1..n_max elements satisfying the system, in canonical order.
std::vector<FiniteModel> search_models(std::uint32_t n_max, const SystemSpec& system);

/// Number of classes breaking the Slim/Medium/Mighty partition or the identity
/// Slim u Mighty = Ko(Medium). Zero is expected.
std::size_t trichotomy_violations(const FiniteModel& m);

/// Per-model look at proper classes against the complement-based description.
struct PathoReport {
  std::size_t proper = 0;                  // classes that are not sets
  std::size_t proper_described = 0;        // of those, Medium with a set complement
  std::size_t medium_nc = 0;
  std::size_t described_not_proper = 0;    // Medium with set complement but itself a set
};
PathoReport patho_report(const FiniteModel& m);

}  // namespace nact
