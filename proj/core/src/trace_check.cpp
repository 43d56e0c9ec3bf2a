#include "nact/trace_check.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>

#include "nact/library.hpp"
#include "nact/syntax.hpp"

// Deliberately shares nothing with the prover beyond the formula library.

namespace nact {

namespace {

using F = Formula;
using K = Formula::Kind;
using Alts = std::vector<std::vector<F>>;

struct Bad {
  std::string what;
};

[[noreturn]] void fail(const TraceStep& s, const std::string& what) {
  throw Bad{"step " + std::to_string(s.id) + " (" + std::string(rule_name(s.rule)) + "): " + what};
}

bool contradicts(const F& a, const F& b) {
  return (a.is(K::Not) && a.child() == b) || (b.is(K::Not) && b.child() == a);
}

bool absurd(const F& f) {
  if (f.is(K::Falsum)) return true;
  if (!f.is(K::Not)) return false;
  const F& g = f.child();
  switch (g.kind()) {
    case K::Verum:
      return true;
    case K::Equal:
      return g.lhs() == g.rhs();
    case K::Set:
      return g.arg().is_var();  // variables range over sets
    default:
      return false;
  }
}

F instance(const Term& cls, const Term& t) {
  auto def = as_abstraction(cls);
  return substitute(def->body(), def->var(), t);
}

// The ways a formula may branch.
std::optional<Alts> branching(const F& f) {
  if (f.is(K::Or)) return Alts{{f.left()}, {f.right()}};
  if (f.is(K::Implies)) return Alts{{F::negate(f.left())}, {f.right()}};
  if (f.is(K::Iff)) {
    return Alts{{f.left(), f.right()}, {F::negate(f.left()), F::negate(f.right())}};
  }
  if (!f.is(K::Not)) return std::nullopt;
  const F& g = f.child();
  if (g.is(K::And)) return Alts{{F::negate(g.left())}, {F::negate(g.right())}};
  if (g.is(K::Iff)) return Alts{{g.left(), F::negate(g.right())}, {F::negate(g.left()), g.right()}};
  if (g.is(K::Member) && as_abstraction(g.rhs())) {
    return Alts{{F::negate(F::set(g.lhs()))}, {F::negate(instance(g.rhs(), g.lhs()))}};
  }
  return std::nullopt;
}

// Whether `to_atom` arises from `atom` by replacing some arguments equal to
// `from` with `to`.
bool replaces(const F& atom, const F& to_atom, const Term& from, const Term& to) {
  if (atom.is(K::Not) != to_atom.is(K::Not)) return false;
  const F& a = atom.is(K::Not) ? atom.child() : atom;
  const F& b = to_atom.is(K::Not) ? to_atom.child() : to_atom;
  if (a.kind() != b.kind() || !a.is_atom()) return false;
  auto x = a.terms();
  auto y = b.terms();
  if (x.size() != y.size() || x.empty()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == y[i]) continue;
    if (!(x[i] == from && y[i] == to)) return false;
  }
  return true;
}

bool among(const F& f, const std::vector<F>& xs) {
  return std::find(xs.begin(), xs.end(), f) != xs.end();
}

class Checker {
 public:
  Checker(const std::vector<F>& axioms, const F& goal, const std::vector<TraceStep>& trace)
      : axioms_(axioms), goal_(goal), trace_(trace) {}

  std::size_t run() {
    parent_[0] = {0, 0};
    depth_[0] = 0;
    for (const F& a : axioms_) note(used_[0], a);
    note(used_[0], goal_);
    std::size_t n = 0;
    for (const TraceStep& s : trace_) {
      if (s.id != n) fail(s, "step ids out of order");
      step(s);
      ++n;
    }
    if (!closed(0)) throw Bad{"branch b0 is not closed"};
    return n;
  }

 private:
  struct Link {
    std::uint32_t parent;
    std::uint32_t split;
  };

  const std::vector<F>& axioms_;
  const F& goal_;
  const std::vector<TraceStep>& trace_;
  std::unordered_map<std::uint32_t, Link> parent_;
  std::unordered_map<std::uint32_t, std::size_t> depth_;
  std::unordered_map<std::uint32_t, std::set<std::uint32_t>> used_;  // free variables so far
  std::unordered_map<std::uint32_t, std::uint32_t> split_of_;        // branch -> split step
  std::set<std::uint32_t> closed_, started_;

  static void note(std::set<std::uint32_t>& into, const F& f) {
    for (std::uint32_t v : f.free_vars()) into.insert(v);
  }

  bool ancestor(std::uint32_t a, std::uint32_t b) const {
    auto da = depth_.find(a);
    if (da == depth_.end()) return false;
    while (depth_.at(b) > da->second) b = parent_.at(b).parent;
    return a == b;
  }

  const F& get(const TraceStep& s, const FormulaRef& r) const {
    if (r.step >= s.id) fail(s, "premise from a later step");
    const TraceStep& p = trace_[r.step];
    if (r.index >= p.conclusions.size()) fail(s, "premise index out of range");
    if (!ancestor(p.branch, s.branch)) fail(s, "premise not on this branch");
    return p.conclusions[r.index];
  }

  std::vector<F> premises(const TraceStep& s, std::size_t n) const {
    if (s.premises.size() != n) fail(s, "wrong number of premises");
    std::vector<F> out;
    for (const FormulaRef& r : s.premises) out.push_back(get(s, r));
    return out;
  }

  void yields(const TraceStep& s, const std::vector<F>& allowed) const {
    if (s.conclusions.empty()) fail(s, "no conclusions");
    for (const F& c : s.conclusions) {
      if (!among(c, allowed)) fail(s, "unexpected conclusion " + to_string(c));
    }
  }

  void fresh(const TraceStep& s, std::set<std::uint32_t>& used) const {
    if (!s.witness || !s.witness->is_var()) fail(s, "missing eigenvariable");
    if (used.count(s.witness->var().index)) fail(s, "eigenvariable is not fresh");
  }

  // Every alternative is refuted by an absurd member or a listed refuter.
  bool refuted(const Alts& alts, const std::vector<F>& refuters, std::size_t skip) const {
    for (std::size_t j = 0; j < alts.size(); ++j) {
      if (j == skip) continue;
      bool dead = false;
      for (const F& g : alts[j]) {
        if (absurd(g)) dead = true;
        for (const F& r : refuters) {
          if (contradicts(g, r)) dead = true;
        }
      }
      if (!dead) return false;
    }
    return true;
  }

  void open_children(const TraceStep& s) {
    if (s.children.size() != s.alternatives.size() || s.children.size() < 2) {
      fail(s, "malformed split");
    }
    for (std::uint32_t c : s.children) {
      if (parent_.count(c)) fail(s, "branch id reused");
      parent_[c] = {s.branch, s.id};
      depth_[c] = depth_[s.branch] + 1;
    }
    if (split_of_.count(s.branch)) fail(s, "branch split twice");
    split_of_[s.branch] = s.id;
  }

  void step(const TraceStep& s) {
    if (!depth_.count(s.branch)) fail(s, "unknown branch");
    if (closed_.count(s.branch)) fail(s, "step after the branch closed");
    if (split_of_.count(s.branch)) fail(s, "step after the branch split");
    if (s.rule != Rule::Branch && s.branch != 0 && !started_.count(s.branch)) {
      fail(s, "branch does not start with its alternative");
    }
    if (s.rule != Rule::Split && s.rule != Rule::Cut &&
        (!s.children.empty() || !s.alternatives.empty())) {
      fail(s, "unexpected alternatives");
    }
    auto& used = used_[s.branch];
    switch (s.rule) {
      case Rule::Assume:
        if (!s.premises.empty() || s.branch != 0 || s.conclusions.size() != 1 ||
            !among(s.conclusions[0], axioms_)) {
          fail(s, "not an axiom");
        }
        break;
      case Rule::NegateGoal:
        if (!s.premises.empty() || s.branch != 0 || s.conclusions.size() != 1 ||
            !(s.conclusions[0] == F::negate(goal_))) {
          fail(s, "not the negated goal");
        }
        break;
      case Rule::DoubleNeg: {
        F p = premises(s, 1)[0];
        if (!p.is(K::Not) || !p.child().is(K::Not)) fail(s, "not a double negation");
        yields(s, {p.child().child()});
        break;
      }
      case Rule::AndElim: {
        F p = premises(s, 1)[0];
        if (!p.is(K::And)) fail(s, "not a conjunction");
        yields(s, {p.left(), p.right()});
        break;
      }
      case Rule::NotOr: {
        F p = premises(s, 1)[0];
        if (!p.is(K::Not) || !p.child().is(K::Or)) fail(s, "not a negated disjunction");
        yields(s, {F::negate(p.child().left()), F::negate(p.child().right())});
        break;
      }
      case Rule::NotImplies: {
        F p = premises(s, 1)[0];
        if (!p.is(K::Not) || !p.child().is(K::Implies)) fail(s, "not a negated implication");
        yields(s, {p.child().left(), F::negate(p.child().right())});
        break;
      }
      case Rule::Delta: {
        F p = premises(s, 1)[0];
        fresh(s, used);
        const Term& c = *s.witness;
        if (p.is(K::Exists)) {
          yields(s, {F::set(c), substitute(p.body(), p.var(), c)});
        } else if (p.is(K::Not) && p.child().is(K::ForAll)) {
          const F& q = p.child();
          yields(s, {F::set(c), F::negate(substitute(q.body(), q.var(), c))});
        } else {
          fail(s, "not existential");
        }
        break;
      }
      case Rule::NotEqual: {
        F p = premises(s, 1)[0];
        if (!p.is(K::Not) || !p.child().is(K::Equal)) fail(s, "not a negated equality");
        fresh(s, used);
        const Term& c = *s.witness;
        const F& e = p.child();
        yields(s, {F::set(c), F::negate(F::iff(F::member(c, e.lhs()), F::member(c, e.rhs())))});
        break;
      }
      case Rule::ClassIn: {
        F p = premises(s, 1)[0];
        if (!p.is(K::Member) || !as_abstraction(p.rhs())) fail(s, "not a class membership");
        yields(s, {F::set(p.lhs()), instance(p.rhs(), p.lhs())});
        break;
      }
      case Rule::MemberSet: {
        F p = premises(s, 1)[0];
        if (!p.is(K::Member)) fail(s, "not a membership");
        yields(s, {F::set(p.lhs())});
        break;
      }
      case Rule::FundUnfold: {
        F p = premises(s, 1)[0];
        const bool neg = p.is(K::Not);
        const F& q = neg ? p.child() : p;
        if (!q.is(K::Fund)) fail(s, "not fund");
        const Term& t = q.arg();
        std::uint32_t y = 1;
        for (std::uint32_t v : t.free_vars()) y = std::max(y, v + 1);
        // bound names far above anything in t; equality is up to renaming
        y += 1000;
        const Term ty = Term::var(y), tw = Term::var(y + 1);
        F body = F::conj(F::member(ty, t),
                         F::forall(VarName{y + 1},
                                   F::negate(F::conj(F::member(tw, ty), F::member(tw, t)))));
        F def = F::exists(VarName{y}, body);
        yields(s, {neg ? F::negate(def) : def});
        break;
      }
      case Rule::EqSym: {
        F p = premises(s, 1)[0];
        if (!p.is(K::Equal)) fail(s, "not an equality");
        yields(s, {F::equal(p.rhs(), p.lhs())});
        break;
      }
      case Rule::Leibniz: {
        auto ps = premises(s, 2);
        if (!ps[0].is(K::Equal)) fail(s, "first premise is not an equality");
        if (s.conclusions.empty()) fail(s, "no conclusions");
        for (const F& c : s.conclusions) {
          if (!replaces(ps[1], c, ps[0].lhs(), ps[0].rhs())) {
            fail(s, "bad substitution " + to_string(c));
          }
        }
        break;
      }
      case Rule::Gamma: {
        auto ps = premises(s, 2);
        if (!ps[1].is(K::Set)) fail(s, "second premise is not sethood");
        const Term& t = ps[1].arg();
        if (!s.witness || !(*s.witness == t)) fail(s, "witness differs from the set");
        if (ps[0].is(K::ForAll)) {
          yields(s, {substitute(ps[0].body(), ps[0].var(), t)});
        } else if (ps[0].is(K::Not) && ps[0].child().is(K::Exists)) {
          const F& q = ps[0].child();
          yields(s, {F::negate(substitute(q.body(), q.var(), t))});
        } else {
          fail(s, "not universal");
        }
        break;
      }
      case Rule::Domain:
        premises(s, 0);
        fresh(s, used);
        yields(s, {F::set(*s.witness)});
        break;
      case Rule::SingletonSet: {
        F p = premises(s, 1)[0];
        if (!p.is(K::Set)) fail(s, "not sethood");
        yields(s, {F::set(lib::singleton(p.arg()))});
        break;
      }
      case Rule::PairSet: {
        auto ps = premises(s, 2);
        if (!ps[0].is(K::Set) || !ps[1].is(K::Set)) fail(s, "not sethood");
        yields(s, {F::set(lib::pair(ps[0].arg(), ps[1].arg()))});
        break;
      }
      case Rule::BetaUnit: {
        if (s.premises.empty()) fail(s, "no premises");
        std::vector<F> ps = premises(s, s.premises.size());
        auto alts = branching(ps[0]);
        if (!alts) fail(s, "not a branching formula");
        std::vector<F> refuters(ps.begin() + 1, ps.end());
        bool ok = false;
        for (std::size_t j = 0; j < alts->size() && !ok; ++j) {
          bool inside = !s.conclusions.empty();
          for (const F& c : s.conclusions) inside = inside && among(c, (*alts)[j]);
          ok = inside && refuted(*alts, refuters, j);
        }
        if (!ok) fail(s, "other alternatives are not refuted");
        break;
      }
      case Rule::Split: {
        F p = premises(s, 1)[0];
        auto alts = branching(p);
        if (!alts) fail(s, "not a branching formula");
        Alts lemma = *alts;
        if (lemma.size() == 2 && lemma[0].size() == 1) {
          const F& a = lemma[0][0];
          lemma[1].insert(lemma[1].begin(), a.is(K::Not) ? a.child() : F::negate(a));
        }
        if (s.alternatives != *alts && s.alternatives != lemma) fail(s, "wrong alternatives");
        if (!s.conclusions.empty()) fail(s, "split with conclusions");
        open_children(s);
        break;
      }
      case Rule::Cut: {
        premises(s, 0);
        const Alts& a = s.alternatives;
        if (a.size() != 2 || a[0].size() != 1 || a[1].size() != 1 ||
            !(a[1][0] == F::negate(a[0][0]))) {
          fail(s, "not an excluded middle");
        }
        if (!s.conclusions.empty()) fail(s, "cut with conclusions");
        open_children(s);
        break;
      }
      case Rule::Branch: {
        if (s.premises.size() != 1) fail(s, "wrong number of premises");
        const FormulaRef& r = s.premises[0];
        auto link = parent_.find(s.branch);
        if (link == parent_.end() || s.branch == 0 || link->second.split != r.step) {
          fail(s, "does not follow its split");
        }
        if (started_.count(s.branch)) fail(s, "branch entered twice");
        const TraceStep& sp = trace_[r.step];
        if (r.index >= sp.children.size() || sp.children[r.index] != s.branch) {
          fail(s, "wrong child");
        }
        for (const F& c : s.conclusions) {
          if (!among(c, sp.alternatives[r.index])) fail(s, "formula not in the alternative");
        }
        started_.insert(s.branch);
        used = used_[link->second.parent];
        for (const auto& alt : sp.alternatives) {
          for (const F& f : alt) note(used, f);
        }
        break;
      }
      case Rule::Close: {
        if (s.premises.empty()) fail(s, "no premises");
        std::vector<F> ps = premises(s, s.premises.size());
        bool ok = false;
        if (ps.size() == 1) ok = absurd(ps[0]);
        if (!ok && ps.size() == 2) ok = contradicts(ps[0], ps[1]);
        if (!ok) {
          auto alts = branching(ps[0]);
          std::vector<F> refuters(ps.begin() + 1, ps.end());
          ok = alts && refuted(*alts, refuters, alts->size());
        }
        if (!ok) fail(s, "no contradiction");
        if (!s.conclusions.empty()) fail(s, "close with conclusions");
        closed_.insert(s.branch);
        break;
      }
    }
    for (const F& c : s.conclusions) note(used, c);
    if (s.witness && s.witness->is_var()) used.insert(s.witness->var().index);
  }

  bool closed(std::uint32_t b) const {
    if (closed_.count(b)) return true;
    auto it = split_of_.find(b);
    if (it == split_of_.end()) return false;
    for (std::uint32_t c : trace_[it->second].children) {
      if (!closed(c)) return false;
    }
    return true;
  }
};

}  // namespace

TraceCheck check_trace(const std::vector<Formula>& axioms, const Formula& goal,
                       const std::vector<TraceStep>& trace) {
  TraceCheck out;
  try {
    Checker c(axioms, goal, trace);
    out.steps_checked = c.run();
    out.ok = true;
  } catch (const Bad& b) {
    out.error = b.what;
  }
  return out;
}

}  // namespace nact
