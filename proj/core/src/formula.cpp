#include "nact/formula.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>
#include <unordered_set>
#include <utility>

namespace nact {

namespace detail {

struct TermNode {
  Term::Kind kind{};
  VarName var{};
  bool restricted = false;
  std::string name;
  std::vector<Term> args;
  std::vector<Formula> body;  // exactly one element for abstractions
  std::size_t hash = 0;
  std::size_t size = 0;
  std::uint32_t max_var = 0;
  std::vector<std::uint32_t> free;
};

struct FormulaNode {
  Formula::Kind kind{};
  VarName var{};
  std::vector<Term> terms;
  std::vector<Formula> children;
  std::size_t hash = 0;
  std::size_t size = 0;
  std::uint32_t max_var = 0;
  std::vector<std::uint32_t> free;
};

struct Factory {
  static Term wrap(TermNode n) { return Term(std::make_shared<const TermNode>(std::move(n))); }
  static Formula wrap(FormulaNode n) {
    return Formula(std::make_shared<const FormulaNode>(std::move(n)));
  }
  static const TermNode& node(const Term& t) { return *t.node_; }
  static const FormulaNode& node(const Formula& f) { return *f.node_; }
};

}  // namespace detail

namespace {

using detail::Factory;
using detail::FormulaNode;
using detail::TermNode;

constexpr std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

constexpr std::size_t kFreeTag = 0x51ed270b27e3f4a1ULL;
constexpr std::size_t kBoundTag = 0x2545f4914f6cdd1dULL;
constexpr std::size_t kAbsTag = 0x6162737472616374ULL;
constexpr std::size_t kNamedTag = 0x4e414d45ULL;
constexpr std::size_t kFormulaTag = 0x666f726dULL;

void merge_free(std::vector<std::uint32_t>& into, std::span<const std::uint32_t> more) {
  if (more.empty()) return;
  if (into.empty()) {
    into.assign(more.begin(), more.end());
    return;
  }
  std::vector<std::uint32_t> out;
  out.reserve(into.size() + more.size());
  std::set_union(into.begin(), into.end(), more.begin(), more.end(), std::back_inserter(out));
  into = std::move(out);
}

void erase_free(std::vector<std::uint32_t>& from, std::uint32_t v) {
  auto it = std::lower_bound(from.begin(), from.end(), v);
  if (it != from.end() && *it == v) from.erase(it);
}

bool sorted_contains(std::span<const std::uint32_t> xs, std::uint32_t v) {
  return std::binary_search(xs.begin(), xs.end(), v);
}

// Binder environment for alpha-invariant hashing and comparison.
struct BinderEnv {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;  // (var, bind depth)
  std::uint32_t depth = 0;

  // Distance to the binder counted from the innermost, or -1 if free.
  long lookup(std::uint32_t v) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
      if (it->first == v) return static_cast<long>(depth - it->second - 1);
    }
    return -1;
  }
  bool touches(std::span<const std::uint32_t> free) const {
    for (const auto& e : entries) {
      if (sorted_contains(free, e.first)) return true;
    }
    return false;
  }
  void push(std::uint32_t v) { entries.emplace_back(v, depth++); }
  void pop() {
    entries.pop_back();
    --depth;
  }
};

std::size_t rehash(const Formula& f, BinderEnv& env);

std::size_t rehash(const Term& t, BinderEnv& env) {
  if (!env.touches(t.free_vars())) return t.hash();
  switch (t.kind()) {
    case Term::Kind::Var: {
      long idx = env.lookup(t.var().index);
      return idx >= 0 ? mix(kBoundTag, static_cast<std::size_t>(idx))
                      : mix(kFreeTag, t.var().index);
    }
    case Term::Kind::Abstraction: {
      env.push(t.var().index);
      std::size_t h = rehash(t.body(), env);
      env.pop();
      return mix(mix(kAbsTag, t.restricted() ? 1 : 0), h);
    }
    case Term::Kind::Named: {
      std::size_t h = mix(kNamedTag, std::hash<std::string>{}(t.name()));
      for (const Term& a : t.args()) h = mix(h, rehash(a, env));
      return h;
    }
  }
  return 0;
}

std::size_t rehash(const Formula& f, BinderEnv& env) {
  if (!env.touches(f.free_vars())) return f.hash();
  std::size_t h = mix(kFormulaTag, static_cast<std::size_t>(f.kind()));
  if (f.is_binder()) {
    env.push(f.var().index);
    h = mix(h, rehash(f.body(), env));
    env.pop();
    return h;
  }
  for (const Term& t : f.terms()) h = mix(h, rehash(t, env));
  for (const Formula& c : f.children()) h = mix(h, rehash(c, env));
  return h;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence.

struct PairEnv {
  BinderEnv a;
  BinderEnv b;
};

bool alpha_eq(const Formula& x, const Formula& y, PairEnv& env);

bool alpha_eq(const Term& x, const Term& y, PairEnv& env) {
  if (!env.a.touches(x.free_vars()) && !env.b.touches(y.free_vars())) {
    if (x.node_id() == y.node_id()) return true;
    if (x.hash() != y.hash()) return false;
  }
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Term::Kind::Var: {
      long ix = env.a.lookup(x.var().index);
      long iy = env.b.lookup(y.var().index);
      if (ix >= 0 || iy >= 0) return ix == iy;
      return x.var() == y.var();
    }
    case Term::Kind::Abstraction: {
      if (x.restricted() != y.restricted()) return false;
      env.a.push(x.var().index);
      env.b.push(y.var().index);
      bool r = alpha_eq(x.body(), y.body(), env);
      env.a.pop();
      env.b.pop();
      return r;
    }
    case Term::Kind::Named: {
      if (x.name() != y.name() || x.args().size() != y.args().size()) return false;
      for (std::size_t i = 0; i < x.args().size(); ++i) {
        if (!alpha_eq(x.args()[i], y.args()[i], env)) return false;
      }
      return true;
    }
  }
  return false;
}

bool alpha_eq(const Formula& x, const Formula& y, PairEnv& env) {
  if (!env.a.touches(x.free_vars()) && !env.b.touches(y.free_vars())) {
    if (x.node_id() == y.node_id()) return true;
    if (x.hash() != y.hash()) return false;
  }
  if (x.kind() != y.kind()) return false;
  if (x.is_binder()) {
    env.a.push(x.var().index);
    env.b.push(y.var().index);
    bool r = alpha_eq(x.body(), y.body(), env);
    env.a.pop();
    env.b.pop();
    return r;
  }
  for (std::size_t i = 0; i < x.terms().size(); ++i) {
    if (!alpha_eq(x.terms()[i], y.terms()[i], env)) return false;
  }
  for (std::size_t i = 0; i < x.children().size(); ++i) {
    if (!alpha_eq(x.children()[i], y.children()[i], env)) return false;
  }
  return true;
}

Formula make_formula(Formula::Kind kind, VarName var, std::vector<Term> terms,
                     std::vector<Formula> children) {
  FormulaNode n;
  n.kind = kind;
  n.var = var;
  n.size = 1;
  const bool binder = kind == Formula::Kind::ForAll || kind == Formula::Kind::Exists;
  if (binder) n.max_var = var.index;
  for (const Term& t : terms) {
    n.size += t.size();
    n.max_var = std::max(n.max_var, max_var_index(t));
    merge_free(n.free, t.free_vars());
  }
  for (const Formula& c : children) {
    n.size += c.size();
    n.max_var = std::max(n.max_var, max_var_index(c));
    merge_free(n.free, c.free_vars());
  }
  if (binder) erase_free(n.free, var.index);

  std::size_t h = mix(kFormulaTag, static_cast<std::size_t>(kind));
  if (binder) {
    BinderEnv env;
    env.push(var.index);
    h = mix(h, rehash(children[0], env));
  } else {
    for (const Term& t : terms) h = mix(h, t.hash());
    for (const Formula& c : children) h = mix(h, c.hash());
  }
  n.hash = h;
  n.terms = std::move(terms);
  n.children = std::move(children);
  return Factory::wrap(std::move(n));
}

}  // namespace

// ---------------------------------------------------------------------------
// VarName

std::string VarName::display() const {
  return index == 0 ? std::string("x") : "x" + std::to_string(index);
}

// ---------------------------------------------------------------------------
// Term

Term Term::var(VarName v) {
  TermNode n;
  n.kind = Kind::Var;
  n.var = v;
  n.size = 1;
  n.max_var = v.index;
  n.free = {v.index};
  n.hash = mix(kFreeTag, v.index);
  return Factory::wrap(std::move(n));
}

Term Term::abstraction(VarName v, Formula body, bool restricted) {
  TermNode n;
  n.kind = Kind::Abstraction;
  n.var = v;
  n.restricted = restricted;
  n.size = 1 + body.size();
  n.max_var = std::max(v.index, max_var_index(body));
  n.free.assign(body.free_vars().begin(), body.free_vars().end());
  erase_free(n.free, v.index);
  BinderEnv env;
  env.push(v.index);
  n.hash = mix(mix(kAbsTag, restricted ? 1 : 0), rehash(body, env));
  n.body.push_back(std::move(body));
  return Factory::wrap(std::move(n));
}

Term Term::named(std::string name, std::vector<Term> args) {
  TermNode n;
  n.kind = Kind::Named;
  n.size = 1;
  std::size_t h = mix(kNamedTag, std::hash<std::string>{}(name));
  for (const Term& a : args) {
    n.size += a.size();
    n.max_var = std::max(n.max_var, max_var_index(a));
    merge_free(n.free, a.free_vars());
    h = mix(h, a.hash());
  }
  n.hash = h;
  n.name = std::move(name);
  n.args = std::move(args);
  return Factory::wrap(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
VarName Term::var() const { return node_->var; }
const Formula& Term::body() const {
  assert(is_abstraction());
  return node_->body[0];
}
bool Term::restricted() const { return node_->restricted; }
const std::string& Term::name() const { return node_->name; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }
std::span<const std::uint32_t> Term::free_vars() const { return node_->free; }
bool Term::has_free(VarName v) const { return sorted_contains(node_->free, v.index); }

bool Term::identical(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Var:
      return var() == other.var();
    case Kind::Abstraction:
      return var() == other.var() && restricted() == other.restricted() &&
             body().identical(other.body());
    case Kind::Named:
      if (name() != other.name() || args().size() != other.args().size()) return false;
      for (std::size_t i = 0; i < args().size(); ++i) {
        if (!args()[i].identical(other.args()[i])) return false;
      }
      return true;
  }
  return false;
}

bool operator==(const Term& a, const Term& b) {
  PairEnv env;
  return alpha_eq(a, b, env);
}

std::uint32_t max_var_index(const Term& t) { return Factory::node(t).max_var; }

// ---------------------------------------------------------------------------
// Formula

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_atom() const {
  switch (kind()) {
    case Kind::Verum:
    case Kind::Falsum:
    case Kind::Member:
    case Kind::Equal:
    case Kind::Set:
    case Kind::Slim:
    case Kind::Fund:
      return true;
    default:
      return false;
  }
}

std::span<const Term> Formula::terms() const { return node_->terms; }
std::span<const Formula> Formula::children() const { return node_->children; }
VarName Formula::var() const { return node_->var; }
std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::size() const { return node_->size; }
std::span<const std::uint32_t> Formula::free_vars() const { return node_->free; }
bool Formula::has_free(VarName v) const { return sorted_contains(node_->free, v.index); }

bool Formula::identical(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || var() != other.var()) return false;
  for (std::size_t i = 0; i < terms().size(); ++i) {
    if (!terms()[i].identical(other.terms()[i])) return false;
  }
  for (std::size_t i = 0; i < children().size(); ++i) {
    if (!children()[i].identical(other.children()[i])) return false;
  }
  return true;
}

bool operator==(const Formula& a, const Formula& b) {
  PairEnv env;
  return alpha_eq(a, b, env);
}

std::uint32_t max_var_index(const Formula& f) { return Factory::node(f).max_var; }

Formula Formula::verum() {
  static const Formula v = make_formula(Kind::Verum, {}, {}, {});
  return v;
}
Formula Formula::falsum() {
  static const Formula v = make_formula(Kind::Falsum, {}, {}, {});
  return v;
}
Formula Formula::member(Term lhs, Term rhs) {
  return make_formula(Kind::Member, {}, {std::move(lhs), std::move(rhs)}, {});
}
Formula Formula::equal(Term lhs, Term rhs) {
  return make_formula(Kind::Equal, {}, {std::move(lhs), std::move(rhs)}, {});
}
Formula Formula::set(Term t) { return make_formula(Kind::Set, {}, {std::move(t)}, {}); }
Formula Formula::slim(Term t) { return make_formula(Kind::Slim, {}, {std::move(t)}, {}); }
Formula Formula::fund(Term t) { return make_formula(Kind::Fund, {}, {std::move(t)}, {}); }
Formula Formula::negate(Formula f) { return make_formula(Kind::Not, {}, {}, {std::move(f)}); }
Formula Formula::conj(Formula a, Formula b) {
  return make_formula(Kind::And, {}, {}, {std::move(a), std::move(b)});
}
Formula Formula::disj(Formula a, Formula b) {
  return make_formula(Kind::Or, {}, {}, {std::move(a), std::move(b)});
}
Formula Formula::implies(Formula a, Formula b) {
  return make_formula(Kind::Implies, {}, {}, {std::move(a), std::move(b)});
}
Formula Formula::iff(Formula a, Formula b) {
  return make_formula(Kind::Iff, {}, {}, {std::move(a), std::move(b)});
}
Formula Formula::forall(VarName v, Formula body) {
  return make_formula(Kind::ForAll, v, {}, {std::move(body)});
}
Formula Formula::exists(VarName v, Formula body) {
  return make_formula(Kind::Exists, v, {}, {std::move(body)});
}

// ---------------------------------------------------------------------------
// Rebuilding helpers

namespace {

Formula rebuild(const Formula& f, std::vector<Term> terms, std::vector<Formula> children) {
  bool same = true;
  for (std::size_t i = 0; i < terms.size() && same; ++i) {
    same = terms[i].node_id() == f.terms()[i].node_id();
  }
  for (std::size_t i = 0; i < children.size() && same; ++i) {
    same = children[i].node_id() == f.children()[i].node_id();
  }
  if (same) return f;
  return make_formula(f.kind(), f.var(), std::move(terms), std::move(children));
}

Formula with_binder(const Formula& f, VarName v, Formula body) {
  if (v == f.var() && body.node_id() == f.body().node_id()) return f;
  return make_formula(f.kind(), v, {}, {std::move(body)});
}

// ---------------------------------------------------------------------------
// Substitution

using Sigma = std::vector<std::pair<std::uint32_t, Term>>;

bool sigma_touches(const Sigma& sigma, std::span<const std::uint32_t> free) {
  for (const auto& [v, t] : sigma) {
    if (sorted_contains(free, v)) return true;
  }
  return false;
}

Formula subst(const Formula& f, const Sigma& sigma);

// Prepares the substitution for descending under a binder of `v` with body
// `body`: drops shadowed entries and picks a replacement binder that avoids
// capturing free variables of the substituted terms.
std::pair<VarName, Sigma> enter_binder(VarName v, const Formula& body, const Sigma& sigma) {
  Sigma inner;
  inner.reserve(sigma.size());
  for (const auto& e : sigma) {
    if (e.first != v.index && body.has_free(VarName{e.first})) inner.push_back(e);
  }
  if (inner.empty()) return {v, {}};
  bool capture = false;
  std::uint32_t top = std::max(v.index, max_var_index(body));
  for (const auto& [k, t] : inner) {
    if (t.has_free(v)) capture = true;
    top = std::max({top, k, max_var_index(t)});
  }
  if (!capture) return {v, std::move(inner)};
  VarName fresh{top + 1};
  inner.emplace_back(v.index, Term::var(fresh));
  return {fresh, std::move(inner)};
}

Term subst(const Term& t, const Sigma& sigma) {
  if (!sigma_touches(sigma, t.free_vars())) return t;
  switch (t.kind()) {
    case Term::Kind::Var:
      for (const auto& [v, r] : sigma) {
        if (v == t.var().index) return r;
      }
      return t;
    case Term::Kind::Abstraction: {
      auto [binder, inner] = enter_binder(t.var(), t.body(), sigma);
      if (inner.empty()) return t;
      return Term::abstraction(binder, subst(t.body(), inner), t.restricted());
    }
    case Term::Kind::Named: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(subst(a, sigma));
      return Term::named(t.name(), std::move(args));
    }
  }
  return t;
}

Formula subst(const Formula& f, const Sigma& sigma) {
  if (!sigma_touches(sigma, f.free_vars())) return f;
  if (f.is_binder()) {
    auto [binder, inner] = enter_binder(f.var(), f.body(), sigma);
    if (inner.empty()) return f;
    return with_binder(f, binder, subst(f.body(), inner));
  }
  std::vector<Term> terms;
  terms.reserve(f.terms().size());
  for (const Term& t : f.terms()) terms.push_back(subst(t, sigma));
  std::vector<Formula> children;
  children.reserve(f.children().size());
  for (const Formula& c : f.children()) children.push_back(subst(c, sigma));
  return rebuild(f, std::move(terms), std::move(children));
}

Sigma to_sigma(const std::map<std::uint32_t, Term>& m) {
  Sigma s;
  for (const auto& [k, v] : m) {
    // Identity entries are dropped so they never force a binder rename.
    if (v.is_var() && v.var().index == k) continue;
    s.emplace_back(k, v);
  }
  return s;
}

}  // namespace

Formula substitute(const Formula& f, VarName v, const Term& t) {
  if (t.is_var() && t.var() == v) return f;
  return subst(f, Sigma{{v.index, t}});
}

Term substitute(const Term& s, VarName v, const Term& t) {
  if (t.is_var() && t.var() == v) return s;
  return subst(s, Sigma{{v.index, t}});
}

Formula substitute(const Formula& f, const std::map<std::uint32_t, Term>& sigma) {
  return subst(f, to_sigma(sigma));
}

Term substitute(const Term& s, const std::map<std::uint32_t, Term>& sigma) {
  return subst(s, to_sigma(sigma));
}

std::uint32_t fresh_index(std::span<const Formula> fs, std::span<const Term> ts) {
  std::uint32_t top = 0;
  bool any = false;
  for (const Formula& f : fs) {
    top = std::max(top, max_var_index(f));
    any = any || f.size() > 0;
  }
  for (const Term& t : ts) {
    top = std::max(top, max_var_index(t));
    any = true;
  }
  return any ? top + 1 : 1;
}

// ---------------------------------------------------------------------------
// Expansion

namespace {

Formula not_(Formula f) { return Formula::negate(std::move(f)); }
Formula and_(Formula a, Formula b) { return Formula::conj(std::move(a), std::move(b)); }

Formula core_iff(const Formula& a, const Formula& b) {
  return and_(not_(and_(a, not_(b))), not_(and_(b, not_(a))));
}

}  // namespace

Term expand(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::Abstraction: {
      Formula body = expand(t.body());
      if (body.node_id() == t.body().node_id()) return t;
      return Term::abstraction(t.var(), std::move(body), t.restricted());
    }
    case Term::Kind::Named: {
      std::vector<Term> args;
      bool changed = false;
      for (const Term& a : t.args()) {
        args.push_back(expand(a));
        changed = changed || args.back().node_id() != a.node_id();
      }
      if (!changed) return t;
      return Term::named(t.name(), std::move(args));
    }
  }
  return t;
}

Formula expand(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Verum:
    case K::Falsum:
      return f;
    case K::Member:
    case K::Set:
    case K::Slim:
      return rebuild(f, [&] {
        std::vector<Term> ts;
        for (const Term& t : f.terms()) ts.push_back(expand(t));
        return ts;
      }(), {});
    case K::Equal: {
      Term lhs = expand(f.lhs());
      Term rhs = expand(f.rhs());
      VarName z{std::max(max_var_index(lhs), max_var_index(rhs)) + 1};
      Term zt = Term::var(z);
      return Formula::forall(z, core_iff(Formula::member(zt, lhs), Formula::member(zt, rhs)));
    }
    case K::Fund: {
      // exists y (y in t and forall w not (w in y and w in t))
      Term t = expand(f.arg());
      VarName y{max_var_index(t) + 1};
      VarName w{y.index + 1};
      Term yt = Term::var(y);
      Term wt = Term::var(w);
      Formula disjoint = Formula::forall(
          w, not_(and_(Formula::member(wt, yt), Formula::member(wt, t))));
      Formula witness = and_(Formula::member(yt, t), disjoint);
      return not_(Formula::forall(y, not_(witness)));
    }
    case K::Not:
      return rebuild(f, {}, {expand(f.child())});
    case K::And:
      return rebuild(f, {}, {expand(f.left()), expand(f.right())});
    case K::Or:
      return not_(and_(not_(expand(f.left())), not_(expand(f.right()))));
    case K::Implies:
      return not_(and_(expand(f.left()), not_(expand(f.right()))));
    case K::Iff:
      return core_iff(expand(f.left()), expand(f.right()));
    case K::ForAll:
      return with_binder(f, f.var(), expand(f.body()));
    case K::Exists:
      return not_(Formula::forall(f.var(), not_(expand(f.body()))));
  }
  return f;
}

namespace {

bool term_is_core(const Term& t);

bool formula_is_core(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Verum:
    case K::Falsum:
      return true;
    case K::Member:
    case K::Set:
    case K::Slim:
      for (const Term& t : f.terms()) {
        if (!term_is_core(t)) return false;
      }
      return true;
    case K::Not:
    case K::And:
    case K::ForAll:
      for (const Formula& c : f.children()) {
        if (!formula_is_core(c)) return false;
      }
      return true;
    default:
      return false;
  }
}

bool term_is_core(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return true;
    case Term::Kind::Abstraction:
      return formula_is_core(t.body());
    case Term::Kind::Named:
      for (const Term& a : t.args()) {
        if (!term_is_core(a)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

bool is_core(const Formula& f) { return formula_is_core(f); }

bool is_parameter_free(const Formula& f) {
  for (std::uint32_t v : f.free_vars()) {
    if (v != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Canonical binder numbering

namespace {

struct Canon {
  std::uint32_t base;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> scope;  // original -> canonical

  std::uint32_t lookup(std::uint32_t v) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == v) return it->second;
    }
    return v;
  }
  std::uint32_t next() const { return base + static_cast<std::uint32_t>(scope.size()) + 1; }

  Formula run(const Formula& f);

  Term run(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var:
        return Term::var(lookup(t.var().index));
      case Term::Kind::Abstraction: {
        std::uint32_t nv = next();
        scope.emplace_back(t.var().index, nv);
        Formula body = run(t.body());
        scope.pop_back();
        return Term::abstraction(VarName{nv}, std::move(body), t.restricted());
      }
      case Term::Kind::Named: {
        std::vector<Term> args;
        for (const Term& a : t.args()) args.push_back(run(a));
        return Term::named(t.name(), std::move(args));
      }
    }
    return t;
  }
};

Formula Canon::run(const Formula& f) {
  if (f.is_binder()) {
    std::uint32_t nv = next();
    scope.emplace_back(f.var().index, nv);
    Formula body = run(f.body());
    scope.pop_back();
    return make_formula(f.kind(), VarName{nv}, {}, {std::move(body)});
  }
  std::vector<Term> terms;
  for (const Term& t : f.terms()) terms.push_back(run(t));
  std::vector<Formula> children;
  for (const Formula& c : f.children()) children.push_back(run(c));
  return make_formula(f.kind(), f.var(), std::move(terms), std::move(children));
}

}  // namespace

Formula canonicalize(const Formula& f) {
  std::uint32_t base = f.free_vars().empty() ? 0 : f.free_vars().back();
  Canon c{base, {}};
  return c.run(f);
}

// ---------------------------------------------------------------------------
// Traversals

namespace {

void collect_subformulas(const Formula& f, std::vector<Formula>& out,
                         std::unordered_set<Formula>& seen);

void collect_from_term(const Term& t, std::vector<Formula>& out, std::unordered_set<Formula>& seen) {
  if (t.is_abstraction()) collect_subformulas(t.body(), out, seen);
  for (const Term& a : t.args()) collect_from_term(a, out, seen);
}

void collect_subformulas(const Formula& f, std::vector<Formula>& out,
                         std::unordered_set<Formula>& seen) {
  if (seen.insert(f).second) out.push_back(f);
  for (const Term& t : f.terms()) collect_from_term(t, out, seen);
  for (const Formula& c : f.children()) collect_subformulas(c, out, seen);
}

void collect_terms(const Formula& f, std::vector<Term>& out, std::unordered_set<Term>& seen);

void collect_terms(const Term& t, std::vector<Term>& out, std::unordered_set<Term>& seen) {
  if (seen.insert(t).second) out.push_back(t);
  if (t.is_abstraction()) collect_terms(t.body(), out, seen);
  for (const Term& a : t.args()) collect_terms(a, out, seen);
}

void collect_terms(const Formula& f, std::vector<Term>& out, std::unordered_set<Term>& seen) {
  for (const Term& t : f.terms()) collect_terms(t, out, seen);
  for (const Formula& c : f.children()) collect_terms(c, out, seen);
}

bool term_has_set_atom(const Term& t);

bool formula_has_set_atom(const Formula& f) {
  if (f.is(Formula::Kind::Set)) return true;
  for (const Term& t : f.terms()) {
    if (term_has_set_atom(t)) return true;
  }
  for (const Formula& c : f.children()) {
    if (formula_has_set_atom(c)) return true;
  }
  return false;
}

bool term_has_set_atom(const Term& t) {
  if (t.is_abstraction()) return formula_has_set_atom(t.body());
  for (const Term& a : t.args()) {
    if (term_has_set_atom(a)) return true;
  }
  return false;
}

}  // namespace

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula> seen;
  collect_subformulas(f, out, seen);
  return out;
}

std::vector<Term> subterms(const Formula& f) {
  std::vector<Term> out;
  std::unordered_set<Term> seen;
  collect_terms(f, out, seen);
  return out;
}

bool contains_set_atom(const Formula& f) { return formula_has_set_atom(f); }

bool contains_instance(const Formula& haystack, const Formula& needle) {
  const auto needle_free = needle.free_vars();
  if (needle_free.size() > 1 || (needle_free.size() == 1 && needle_free[0] != 0)) {
    // Not a parameter-free pattern; fall back to plain alpha-variant search.
    for (const Formula& s : subformulas(haystack)) {
      if (s == needle) return true;
    }
    return false;
  }
  for (const Formula& s : subformulas(haystack)) {
    if (s.size() != needle.size()) continue;
    const auto free = s.free_vars();
    if (free.size() != needle_free.size()) continue;
    if (free.empty()) {
      if (s == needle) return true;
      continue;
    }
    if (substitute(s, VarName{free[0]}, Term::var(kX)) == needle) return true;
  }
  return false;
}

Formula conj_all(std::span<const Formula> fs) {
  if (fs.empty()) return Formula::verum();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = Formula::conj(fs[i], acc);
  return acc;
}

Formula disj_all(std::span<const Formula> fs) {
  if (fs.empty()) return Formula::falsum();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = Formula::disj(fs[i], acc);
  return acc;
}

}  // namespace nact
