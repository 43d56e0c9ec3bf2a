#include "nact/library.hpp"

#include <algorithm>
#include <functional>

namespace nact {

namespace {

using F = Formula;

Term v(std::uint32_t i) { return Term::var(VarName{i}); }

// Smallest binder index safe for a definition whose parameters are `args`.
std::uint32_t base_for(std::span<const Term> args) {
  std::uint32_t top = 0;
  for (const Term& a : args) top = std::max(top, max_var_index(a));
  return top + 1;
}

using Builder = std::function<Term(std::span<const Term>)>;

struct Entry {
  NamedTermInfo info;
  Builder build;
};

Term trans_free_abstraction(std::uint32_t b, F body, bool restricted = false) {
  return Term::abstraction(VarName{b}, std::move(body), restricted);
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    t.push_back({{"0", 0, "empty class {x: not x = x}"}, [](std::span<const Term>) {
                   return Term::abstraction(kX, F::negate(F::equal(v(0), v(0))), false);
                 }});
    t.push_back({{"V", 0, "universal class {x: x = x}"}, [](std::span<const Term>) {
                   return Term::abstraction(kX, F::equal(v(0), v(0)), false);
                 }});
    t.push_back({{"Ru", 0, "Russell class {x: not x in x}"}, [](std::span<const Term>) {
                   return Term::abstraction(kX, F::negate(F::member(v(0), v(0))), false);
                 }});
    t.push_back({{"Ru2", 0, "double-membership Russell class {|x: not exists y (x in y and y in x)|}"},
                 [](std::span<const Term>) {
                   F chain = F::conj(F::member(v(0), v(1)), F::member(v(1), v(0)));
                   F body = F::negate(F::exists(VarName{1}, chain));
                   return Term::abstraction(kX, body, true);
                 }});
    t.push_back({{"Ko", 1, "complement {x: not x in t}"}, [](std::span<const Term> a) {
                   std::uint32_t b = base_for(a);
                   return trans_free_abstraction(b, F::negate(F::member(v(b), a[0])));
                 }});
    t.push_back({{"sing", 1, "singleton {x: x = t}"}, [](std::span<const Term> a) {
                   std::uint32_t b = base_for(a);
                   return trans_free_abstraction(b, F::equal(v(b), a[0]));
                 }});
    t.push_back({{"pair", 2, "unordered pair {x: x = a or x = b}"}, [](std::span<const Term> a) {
                   std::uint32_t b = base_for(a);
                   return trans_free_abstraction(
                       b, F::disj(F::equal(v(b), a[0]), F::equal(v(b), a[1])));
                 }});
    t.push_back({{"si", 0, "class of all singletons {x: exists y x = {y}}"},
                 [](std::span<const Term>) {
                   F body = F::exists(VarName{1}, F::equal(v(0), lib::singleton(v(1))));
                   return Term::abstraction(kX, body, false);
                 }});
    t.push_back({{"si'", 0, "modified singleton class {x: exists y (x = {y} and not {y} in y)}"},
                 [](std::span<const Term>) {
                   Term sy = lib::singleton(v(1));
                   F body = F::exists(VarName{1}, F::conj(F::equal(v(0), sy),
                                                          F::negate(F::member(sy, v(1)))));
                   return Term::abstraction(kX, body, false);
                 }});
    t.push_back({{"succ", 1, "successor t u {t}"}, [](std::span<const Term> a) {
                   std::uint32_t b = base_for(a);
                   return trans_free_abstraction(
                       b, F::disj(F::member(v(b), a[0]), F::equal(v(b), a[0])));
                 }});
    t.push_back({{"Omega", 0, "von Neumann natural numbers"}, [](std::span<const Term>) {
                   // x in every class y containing 0 and closed under successor
                   Term y = v(1);
                   Term z = v(2);
                   F closed = F::forall(VarName{2}, F::implies(F::member(z, y),
                                                               F::member(lib::successor(z), y)));
                   F inductive = F::conj(F::member(lib::empty(), y), closed);
                   F body = F::forall(VarName{1}, F::implies(inductive, F::member(v(0), y)));
                   return Term::abstraction(kX, body, false);
                 }});
    t.push_back({{"On", 0, "von Neumann ordinals (hereditarily transitive sets)"},
                 [](std::span<const Term>) {
                   F body = F::conj(lib::transitive(v(0)),
                                    F::forall(VarName{1}, F::implies(F::member(v(1), v(0)),
                                                                     lib::transitive(v(1)))));
                   return Term::abstraction(kX, body, false);
                 }});
    t.push_back({{"Power", 1, "power class {x: forall z (z in x implies z in t)}"},
                 [](std::span<const Term> a) {
                   std::uint32_t b = base_for(a);
                   F body = F::forall(VarName{b + 1}, F::implies(F::member(v(b + 1), v(b)),
                                                                 F::member(v(b + 1), a[0])));
                   return trans_free_abstraction(b, body);
                 }});
    t.push_back({{"Union", 1, "large union {x: exists y (y in t and x in y)}"},
                 [](std::span<const Term> a) {
                   std::uint32_t b = base_for(a);
                   F body = F::exists(VarName{b + 1}, F::conj(F::member(v(b + 1), a[0]),
                                                              F::member(v(b), v(b + 1))));
                   return trans_free_abstraction(b, body);
                 }});
    t.push_back({{"opair", 2, "Kuratowski pair {{a}, {a, b}}"}, [](std::span<const Term> a) {
                   Term outer = lib::pair(lib::singleton(a[0]), lib::pair(a[0], a[1]));
                   return *definition(outer);
                 }});
    t.push_back({{"Image", 2, "image F[d] = {x: exists z (z in d and <z, x> in F)}"},
                 [](std::span<const Term> a) {
                   std::uint32_t b = base_for(a);
                   F body = F::exists(VarName{b + 1},
                                      F::conj(F::member(v(b + 1), a[1]),
                                              F::member(lib::ordered_pair(v(b + 1), v(b)), a[0])));
                   return trans_free_abstraction(b, body);
                 }});
    return t;
  }();
  return table;
}

const Entry* find_entry(std::string_view name) {
  for (const Entry& e : entries()) {
    if (e.info.name == name) return &e;
  }
  return nullptr;
}

}  // namespace

const std::vector<NamedTermInfo>& named_terms() {
  static const std::vector<NamedTermInfo> infos = [] {
    std::vector<NamedTermInfo> out;
    for (const Entry& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const NamedTermInfo* find_named(std::string_view name) {
  const Entry* e = find_entry(name);
  return e ? &e->info : nullptr;
}

std::optional<Term> definition(const Term& named) {
  if (!named.is_named()) return std::nullopt;
  const Entry* e = find_entry(named.name());
  if (!e || e->info.arity != named.args().size()) return std::nullopt;
  return e->build(named.args());
}

std::optional<Term> as_abstraction(const Term& t) {
  if (t.is_abstraction()) return t;
  if (t.is_named()) return definition(t);
  return std::nullopt;
}

Term unfold_named(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::Abstraction:
      return Term::abstraction(t.var(), unfold_named(t.body()), t.restricted());
    case Term::Kind::Named: {
      if (auto d = definition(t)) return unfold_named(*d);
      std::vector<Term> args;
      for (const Term& a : t.args()) args.push_back(unfold_named(a));
      return Term::named(t.name(), std::move(args));
    }
  }
  return t;
}

Formula unfold_named(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Verum:
    case K::Falsum:
      return f;
    case K::Member:
      return F::member(unfold_named(f.lhs()), unfold_named(f.rhs()));
    case K::Equal:
      return F::equal(unfold_named(f.lhs()), unfold_named(f.rhs()));
    case K::Set:
      return F::set(unfold_named(f.arg()));
    case K::Slim:
      return F::slim(unfold_named(f.arg()));
    case K::Fund:
      return F::fund(unfold_named(f.arg()));
    case K::Not:
      return F::negate(unfold_named(f.child()));
    case K::And:
      return F::conj(unfold_named(f.left()), unfold_named(f.right()));
    case K::Or:
      return F::disj(unfold_named(f.left()), unfold_named(f.right()));
    case K::Implies:
      return F::implies(unfold_named(f.left()), unfold_named(f.right()));
    case K::Iff:
      return F::iff(unfold_named(f.left()), unfold_named(f.right()));
    case K::ForAll:
      return F::forall(f.var(), unfold_named(f.body()));
    case K::Exists:
      return F::exists(f.var(), unfold_named(f.body()));
  }
  return f;
}

namespace lib {

Term empty() { return Term::named("0"); }
Term universe() { return Term::named("V"); }
Term russell() { return Term::named("Ru"); }
Term russell2() { return Term::named("Ru2"); }
Term complement(const Term& t) { return Term::named("Ko", {t}); }
Term singleton(const Term& t) { return Term::named("sing", {t}); }
Term pair(const Term& a, const Term& b) { return Term::named("pair", {a, b}); }
Term singletons() { return Term::named("si"); }
Term singletons_prime() { return Term::named("si'"); }
Term successor(const Term& t) { return Term::named("succ", {t}); }
Term omega() { return Term::named("Omega"); }
Term ordinals() { return Term::named("On"); }
Term power(const Term& t) { return Term::named("Power", {t}); }
Term big_union(const Term& t) { return Term::named("Union", {t}); }
Term ordered_pair(const Term& a, const Term& b) { return Term::named("opair", {a, b}); }
Term image(const Term& f, const Term& d) { return Term::named("Image", {f, d}); }

Formula function(const Term& f) {
  const std::uint32_t b = max_var_index(f) + 1;
  Term p = v(b), x = v(b + 1), y = v(b + 2), z = v(b + 3);
  F is_pair = F::exists(VarName{b + 1},
                        F::exists(VarName{b + 2}, F::equal(p, ordered_pair(x, y))));
  F all_pairs = F::forall(VarName{b}, F::implies(F::member(p, f), is_pair));
  F functional = F::forall(
      VarName{b + 1},
      F::forall(VarName{b + 2},
                F::forall(VarName{b + 3},
                          F::implies(F::conj(F::member(ordered_pair(x, y), f),
                                             F::member(ordered_pair(x, z), f)),
                                     F::equal(y, z)))));
  return F::conj(all_pairs, functional);
}

Formula transitive(const Term& t) {
  const std::uint32_t b = max_var_index(t) + 1;
  Term y = v(b), z = v(b + 1);
  return F::forall(VarName{b},
                   F::implies(F::member(y, t),
                              F::forall(VarName{b + 1}, F::implies(F::member(z, y),
                                                                   F::member(z, t)))));
}

Formula mighty(const Term& t) { return F::slim(complement(t)); }

}  // namespace lib

}  // namespace nact
