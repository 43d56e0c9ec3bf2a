#include "nact/prover.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "nact/library.hpp"
#include "nact/schemata.hpp"
#include "nact/syntax.hpp"

namespace nact {

namespace {

using F = Formula;
using K = Formula::Kind;

struct OutOfSteps {};

constexpr std::array<std::string_view, 22> kRuleNames{
    "Assume",     "NegateGoal", "DoubleNeg", "AndElim",      "NotOr",   "NotImplies",
    "Delta",      "NotEqual",   "ClassIn",   "MemberSet",    "FundUnfold", "EqSym",
    "Leibniz",    "Gamma",      "Domain",    "SingletonSet", "PairSet", "BetaUnit",
    "Split",      "Cut",        "Branch",    "Close",
};

F complement(const F& f) { return f.is(K::Not) ? f.child() : F::negate(f); }

// Formulas that close a branch on their own.
bool self_closing(const F& f) {
  if (f.is(K::Falsum)) return true;
  if (!f.is(K::Not)) return false;
  const F& g = f.child();
  if (g.is(K::Verum)) return true;
  if (g.is(K::Equal) && g.lhs() == g.rhs()) return true;
  if (g.is(K::Set) && g.arg().is_var()) return true;
  return false;
}

F class_instance(const Term& def, const Term& t) { return substitute(def.body(), def.var(), t); }

F fund_definition(const Term& t) {
  const std::uint32_t b = max_var_index(t) + 1;
  const Term y = Term::var(b), w = Term::var(b + 1);
  F minimal = F::forall(VarName{b + 1}, F::negate(F::conj(F::member(w, y), F::member(w, t))));
  return F::exists(VarName{b}, F::conj(F::member(y, t), minimal));
}

using Alternatives = std::vector<std::vector<F>>;

// Branching decomposition; empty for non-beta formulas.
Alternatives beta_alternatives(const F& f) {
  switch (f.kind()) {
    case K::Or:
      return {{f.left()}, {f.right()}};
    case K::Implies:
      return {{F::negate(f.left())}, {f.right()}};
    case K::Iff:
      return {{f.left(), f.right()}, {F::negate(f.left()), F::negate(f.right())}};
    case K::Not: {
      const F& g = f.child();
      if (g.is(K::And)) return {{F::negate(g.left())}, {F::negate(g.right())}};
      if (g.is(K::Iff)) {
        return {{g.left(), F::negate(g.right())}, {F::negate(g.left()), g.right()}};
      }
      if (g.is(K::Member)) {
        if (auto def = as_abstraction(g.rhs())) {
          return {{F::negate(F::set(g.lhs()))}, {F::negate(class_instance(*def, g.lhs()))}};
        }
      }
      return {};
    }
    default:
      return {};
  }
}

// Each nonempty choice of argument positions holding `from`, replaced by `to`.
// Only whole arguments are rewritten, so no new terms appear.
std::vector<F> leibniz_variants(const F& atom, const Term& from, const Term& to) {
  const bool neg = atom.is(K::Not);
  const F& g = neg ? atom.child() : atom;
  std::vector<Term> args(g.terms().begin(), g.terms().end());
  std::vector<Term> moved;
  std::vector<bool> changed;
  for (const Term& a : args) {
    const bool hit = a == from;
    moved.push_back(hit ? to : a);
    changed.push_back(hit);
  }
  std::vector<F> out;
  const unsigned n = static_cast<unsigned>(args.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    std::vector<Term> now = args;
    for (unsigned i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        if (!changed[i]) ok = false;
        now[i] = moved[i];
      }
    }
    if (!ok) continue;
    F made = F::verum();
    switch (g.kind()) {
      case K::Member:
        made = F::member(now[0], now[1]);
        break;
      case K::Equal:
        made = F::equal(now[0], now[1]);
        break;
      case K::Set:
        made = F::set(now[0]);
        break;
      default:
        made = F::slim(now[0]);
        break;
    }
    out.push_back(neg ? F::negate(made) : made);
  }
  return out;
}

std::size_t max_term(const F& f) {
  std::size_t m = 0;
  for (const Term& t : f.terms()) m = std::max(m, t.size());
  if (f.is(K::Not)) m = std::max(m, max_term(f.child()));
  return m;
}

// Multimap whose insertions can be undone in reverse order.
template <class Key, class Hash>
class TrailIndex {
 public:
  void add(const Key& k, std::uint32_t v) {
    map_[k].push_back(v);
    log_.push_back(k);
  }
  std::vector<std::uint32_t> find(const Key& k) const {
    auto it = map_.find(k);
    return it == map_.end() ? std::vector<std::uint32_t>{} : it->second;
  }
  const std::vector<std::uint32_t>* peek(const Key& k) const {
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
  }
  std::size_t size() const { return log_.size(); }
  void truncate(std::size_t n) {
    while (log_.size() > n) {
      auto it = map_.find(log_.back());
      it->second.pop_back();
      if (it->second.empty()) map_.erase(it);
      log_.pop_back();
    }
  }

 private:
  std::unordered_map<Key, std::vector<std::uint32_t>, Hash> map_;
  std::vector<Key> log_;
};

class Engine {
 public:
  Engine(const ProofBudget& budget, std::uint32_t fresh) : budget_(budget), next_var_(fresh) {}

  std::vector<TraceStep> trace;
  std::size_t counted = 0;
  bool saturated = false;

  bool run(const std::vector<F>& axioms, const F& goal) {
    for (const F& a : axioms) note_input(a);
    note_input(goal);
    for (const F& a : axioms) {
      if (present(a)) continue;
      std::uint32_t id = record(Rule::Assume, {}, {a});
      if (insert(a, {id, 0}, 0)) return true;
    }
    F ng = F::negate(goal);
    if (!present(ng)) {
      std::uint32_t id = record(Rule::NegateGoal, {}, {ng});
      if (insert(ng, {id, 0}, 0)) return true;
    }
    return search();
  }

 private:
  struct Item {
    F f;
    FormulaRef ref;
    std::uint32_t depth;
  };
  struct PoolTerm {
    Term t;
    FormulaRef ref;
  };
  struct Beta {
    std::uint32_t item;
    Alternatives alts;
    bool ground;
    bool done = false;
  };
  struct Gamma {
    std::uint32_t item;
    std::size_t ground_next = 0;
    std::size_t all_next = 0;
  };
  struct GammaLog {
    std::size_t slot, ground_next, all_next;
  };
  struct Mark {
    std::size_t items, alpha, betas, queue, head, done_log, gammas, gamma_log, neqs, neq_next,
        pool, eligible_pool, input_pool, classes, eligible_classes, derived, mentions, watch,
        by_arg, by_lhs;
    std::uint32_t next_var;
  };
  struct Frame {
    Mark mark;
    std::uint32_t split;
    Alternatives alts;
    std::vector<std::uint32_t> children;
    std::size_t next = 0;
  };
  enum class Outcome { Closed, Open, Split, Progress, Idle };

  const ProofBudget budget_;
  std::uint32_t next_var_;
  std::uint32_t branch_ = 0;
  std::uint32_t next_branch_ = 1;

  std::vector<Item> items_;
  std::unordered_map<F, std::uint32_t, FormulaHash> where_;
  std::size_t alpha_ = 0;

  std::vector<Beta> betas_;
  std::vector<std::uint32_t> beta_queue_;  // betas to re-examine
  std::size_t beta_head_ = 0;
  std::vector<std::uint32_t> done_log_;
  TrailIndex<F, FormulaHash> watch_;  // formula -> betas mentioning it or its complement

  std::vector<Gamma> gammas_;
  std::vector<GammaLog> gamma_log_;

  // negated equalities wait for their witness until the ground work is done
  std::vector<std::uint32_t> neqs_;
  std::size_t neq_next_ = 0;

  TrailIndex<Term, TermHash> by_arg_;  // term -> atoms with it as an argument
  TrailIndex<Term, TermHash> by_lhs_;  // term -> equalities with it on the left

  std::vector<PoolTerm> pool_;
  std::unordered_map<Term, std::uint32_t, TermHash> pool_index_;
  std::vector<std::uint32_t> eligible_pool_, input_pool_;
  std::vector<Term> classes_;
  std::unordered_set<Term, TermHash> class_set_;
  std::vector<std::uint32_t> eligible_classes_;
  std::vector<Term> derived_;
  std::unordered_set<Term, TermHash> derived_set_;
  // singletons and pairs named on the branch
  std::vector<Term> mentions_;
  std::unordered_set<Term, TermHash> mention_set_;

  std::vector<Frame> stack_;
  Frame pending_;
  // closed terms of the input; with derived_ they bound the ground phase
  std::unordered_set<Term, TermHash> input_terms_;

  void note_input(const F& f) {
    for (const Term& t : subterms(f)) {
      if (t.closed()) input_terms_.insert(t);
    }
  }

  bool eligible(const Term& t) const {
    return t.closed() && (input_terms_.count(t) || derived_set_.count(t));
  }

  // Closed formula whose closed atom arguments are all eligible.
  bool eligible(const F& f) const { return f.closed() && ground_terms_ok(f); }

  bool ground_terms_ok(const F& f) const {
    for (const Term& t : f.terms()) {
      if (t.closed() && !eligible(t)) return false;
    }
    for (const F& c : f.children()) {
      if (!ground_terms_ok(c)) return false;
    }
    return true;
  }

  // --- trail ------------------------------------------------------------

  Mark mark() const {
    return {items_.size(),       alpha_,
            betas_.size(),       beta_queue_.size(),
            beta_head_,          done_log_.size(),
            gammas_.size(),      gamma_log_.size(),
            neqs_.size(),        neq_next_,
            pool_.size(),        eligible_pool_.size(),
            input_pool_.size(),  classes_.size(),
            eligible_classes_.size(), derived_.size(),
            mentions_.size(),
            watch_.size(),       by_arg_.size(),
            by_lhs_.size(),      next_var_};
  }

  void restore(const Mark& m) {
    while (done_log_.size() > m.done_log) {
      const std::uint32_t b = done_log_.back();
      if (b < betas_.size()) betas_[b].done = false;
      done_log_.pop_back();
    }
    while (gamma_log_.size() > m.gamma_log) {
      const GammaLog& g = gamma_log_.back();
      if (g.slot < gammas_.size()) {
        gammas_[g.slot].ground_next = g.ground_next;
        gammas_[g.slot].all_next = g.all_next;
      }
      gamma_log_.pop_back();
    }
    betas_.resize(m.betas);
    beta_queue_.resize(m.queue);
    beta_head_ = m.head;
    gammas_.resize(m.gammas);
    neqs_.resize(m.neqs);
    neq_next_ = m.neq_next;
    watch_.truncate(m.watch);
    by_arg_.truncate(m.by_arg);
    by_lhs_.truncate(m.by_lhs);
    while (items_.size() > m.items) {
      auto it = where_.find(items_.back().f);
      if (it != where_.end() && it->second == items_.size() - 1) where_.erase(it);
      items_.pop_back();
    }
    alpha_ = m.alpha;
    while (pool_.size() > m.pool) {
      pool_index_.erase(pool_.back().t);
      pool_.pop_back();
    }
    eligible_pool_.resize(m.eligible_pool);
    input_pool_.resize(m.input_pool);
    while (classes_.size() > m.classes) {
      class_set_.erase(classes_.back());
      classes_.pop_back();
    }
    eligible_classes_.resize(m.eligible_classes);
    while (mentions_.size() > m.mentions) {
      mention_set_.erase(mentions_.back());
      mentions_.pop_back();
    }
    while (derived_.size() > m.derived) {
      derived_set_.erase(derived_.back());
      derived_.pop_back();
    }
    next_var_ = m.next_var;
  }

  // --- recording ----------------------------------------------------------

  std::uint32_t record(Rule r, std::vector<FormulaRef> premises, std::vector<F> conclusions,
                       std::optional<Term> witness = std::nullopt) {
    if (r != Rule::Assume && r != Rule::NegateGoal && r != Rule::Branch) {
      if (counted >= budget_.max_steps) throw OutOfSteps{};
      ++counted;
    }
    TraceStep s;
    s.id = static_cast<std::uint32_t>(trace.size());
    s.branch = branch_;
    s.rule = r;
    s.premises = std::move(premises);
    s.conclusions = std::move(conclusions);
    s.witness = std::move(witness);
    trace.push_back(std::move(s));
    return trace.back().id;
  }

  bool present(const F& f) const { return where_.count(f) != 0; }

  // Adds a formula to the branch; true if the branch closes.
  bool insert(const F& f, FormulaRef ref, std::uint32_t depth) {
    const std::uint32_t idx = static_cast<std::uint32_t>(items_.size());
    items_.push_back({f, ref, depth});
    where_.emplace(f, idx);
    if (self_closing(f)) {
      record(Rule::Close, {ref}, {});
      return true;
    }
    if (auto it = where_.find(complement(f)); it != where_.end()) {
      record(Rule::Close, {items_[it->second].ref, ref}, {});
      return true;
    }
    if (const auto* w = watch_.peek(f)) {
      for (std::uint32_t b : *w) {
        if (!betas_[b].done) beta_queue_.push_back(b);
      }
    }
    const F& atom = f.is(K::Not) ? f.child() : f;
    if (atom.is_atom()) {
      for (const Term& t : atom.terms()) note_mentions(t);
    }
    switch (f.kind()) {
      case K::Set:
        add_pool(f.arg(), ref);
        add_class(f.arg());
        break;
      case K::Member:
        add_class(f.rhs());
        break;
      case K::Not:
        if (f.child().is(K::Set)) add_class(f.child().arg());
        if (f.child().is(K::Member)) add_class(f.child().rhs());
        break;
      default:
        break;
    }
    return false;
  }

  void add_pool(const Term& t, FormulaRef ref) {
    if (t.size() > budget_.max_term_size) return;
    const std::uint32_t idx = static_cast<std::uint32_t>(pool_.size());
    if (!pool_index_.emplace(t, idx).second) return;
    pool_.push_back({t, ref});
    if (eligible(t)) eligible_pool_.push_back(idx);
    if (t.closed() && input_terms_.count(t)) input_pool_.push_back(idx);
  }

  void note_mentions(const Term& t) {
    if (t.kind() != Term::Kind::Named) return;
    const bool wanted = (t.name() == "sing" && t.args().size() == 1) ||
                        (t.name() == "pair" && t.args().size() == 2);
    if (wanted && t.size() <= budget_.max_term_size && mention_set_.insert(t).second) {
      mentions_.push_back(t);
    }
    for (const Term& a : t.args()) note_mentions(a);
  }

  void add_class(const Term& t) {
    if (t.is_var() || t.size() > budget_.max_term_size) return;
    if (class_set_.count(t)) return;
    if (!as_abstraction(t)) return;
    class_set_.insert(t);
    if (eligible(t)) eligible_classes_.push_back(static_cast<std::uint32_t>(classes_.size()));
    classes_.push_back(t);
  }

  // Records one rule application with the conclusions not yet on the branch.
  bool emit(Rule r, std::vector<FormulaRef> premises, const std::vector<F>& conclusions,
            std::uint32_t depth, std::optional<Term> witness = std::nullopt) {
    std::vector<F> fresh;
    for (const F& c : conclusions) {
      if (present(c)) continue;
      if (std::find(fresh.begin(), fresh.end(), c) != fresh.end()) continue;
      fresh.push_back(c);
    }
    if (fresh.empty()) return false;
    const std::uint32_t id = record(r, std::move(premises), fresh, std::move(witness));
    for (std::uint32_t k = 0; k < fresh.size(); ++k) {
      if (insert(fresh[k], {id, k}, depth)) return true;
    }
    return false;
  }

  // True when the literals on the branch already make f true.
  bool satisfied(const F& f) const {
    if (present(f)) return true;
    switch (f.kind()) {
      case K::Verum:
        return true;
      case K::Equal:
        return f.lhs() == f.rhs();
      case K::And:
        return satisfied(f.left()) && satisfied(f.right());
      case K::Or:
        return satisfied(f.left()) || satisfied(f.right());
      case K::Implies:
        return satisfied(F::negate(f.left())) || satisfied(f.right());
      case K::Iff:
        return (satisfied(f.left()) && satisfied(f.right())) ||
               (satisfied(F::negate(f.left())) && satisfied(F::negate(f.right())));
      case K::Not: {
        const F& g = f.child();
        if (g.is(K::Falsum)) return true;
        if (g.is(K::Not)) return satisfied(g.child());
        if (g.is(K::And)) return satisfied(F::negate(g.left())) || satisfied(F::negate(g.right()));
        if (g.is(K::Or)) return satisfied(F::negate(g.left())) && satisfied(F::negate(g.right()));
        if (g.is(K::Implies)) return satisfied(g.left()) && satisfied(F::negate(g.right()));
        if (g.is(K::Iff)) {
          return (satisfied(g.left()) && satisfied(F::negate(g.right()))) ||
                 (satisfied(F::negate(g.left())) && satisfied(g.right()));
        }
        return false;
      }
      default:
        return false;
    }
  }

  // --- alpha phase ----------------------------------------------------------

  bool saturate_alpha() {
    while (alpha_ < items_.size()) {
      const std::uint32_t i = static_cast<std::uint32_t>(alpha_++);
      if (process(i)) return true;
    }
    return false;
  }

  // Witness checks only look at the newest part of the pool.
  std::size_t recent_start() const {
    constexpr std::size_t kWindow = 128;
    return pool_.size() > kWindow ? pool_.size() - kWindow : 0;
  }

  bool delta(std::uint32_t i, VarName v, const F& body, bool negated) {
    // an existing set already witnesses the formula
    for (std::size_t k = recent_start(); k < pool_.size(); ++k) {
      F inst = substitute(body, v, pool_[k].t);
      if (satisfied(negated ? F::negate(inst) : inst)) return false;
    }
    const Term c = Term::var(next_var_++);
    F inst = substitute(body, v, c);
    return emit(Rule::Delta, {items_[i].ref}, {F::set(c), negated ? F::negate(inst) : inst},
                items_[i].depth, c);
  }

  void register_beta(std::uint32_t i) {
    const std::uint32_t b = static_cast<std::uint32_t>(betas_.size());
    betas_.push_back({i, beta_alternatives(items_[i].f), eligible(items_[i].f)});
    for (const auto& alt : betas_.back().alts) {
      for (const F& g : alt) {
        watch_.add(g, b);
        watch_.add(complement(g), b);
      }
    }
    beta_queue_.push_back(b);
  }

  void register_gamma(std::uint32_t i) { gammas_.push_back({i}); }

  bool process(std::uint32_t i) {
    const F f = items_[i].f;
    const FormulaRef r = items_[i].ref;
    const std::uint32_t d = items_[i].depth;
    switch (f.kind()) {
      case K::And:
        return emit(Rule::AndElim, {r}, {f.left(), f.right()}, d);
      case K::Or:
      case K::Implies:
      case K::Iff:
        register_beta(i);
        return false;
      case K::ForAll:
        register_gamma(i);
        return false;
      case K::Exists:
        return delta(i, f.var(), f.body(), false);
      case K::Member: {
        if (auto def = as_abstraction(f.rhs())) {
          if (emit(Rule::ClassIn, {r}, {F::set(f.lhs()), class_instance(*def, f.lhs())}, d)) {
            return true;
          }
        } else if (emit(Rule::MemberSet, {r}, {F::set(f.lhs())}, d)) {
          return true;
        }
        return leibniz_atom(i);
      }
      case K::Equal:
        if (!(f.lhs() == f.rhs())) {
          if (emit(Rule::EqSym, {r}, {F::equal(f.rhs(), f.lhs())}, d)) return true;
        }
        if (leibniz_atom(i)) return true;
        return leibniz_eq(i);
      case K::Set:
      case K::Slim:
        return leibniz_atom(i);
      case K::Fund:
        return emit(Rule::FundUnfold, {r}, {fund_definition(f.arg())}, d);
      case K::Not: {
        const F& g = f.child();
        switch (g.kind()) {
          case K::Not:
            return emit(Rule::DoubleNeg, {r}, {g.child()}, d);
          case K::Or:
            return emit(Rule::NotOr, {r}, {F::negate(g.left()), F::negate(g.right())}, d);
          case K::Implies:
            return emit(Rule::NotImplies, {r}, {g.left(), F::negate(g.right())}, d);
          case K::And:
          case K::Iff:
            register_beta(i);
            return false;
          case K::ForAll:
            return delta(i, g.var(), g.body(), true);
          case K::Exists:
            register_gamma(i);
            return false;
          case K::Member:
            if (as_abstraction(g.rhs())) register_beta(i);
            return leibniz_atom(i);
          case K::Equal:
            neqs_.push_back(i);
            return leibniz_atom(i);
          case K::Set:
          case K::Slim:
            return leibniz_atom(i);
          case K::Fund:
            return emit(Rule::FundUnfold, {r}, {F::negate(fund_definition(g.arg()))}, d);
          default:
            return false;
        }
      }
      default:
        return false;
    }
  }

  bool leibniz(std::uint32_t e, std::uint32_t a) {
    const std::uint32_t depth = std::max(items_[e].depth, items_[a].depth) + 1;
    if (depth > budget_.max_equality_depth) return false;
    const F& eq = items_[e].f;
    if (eq.lhs() == eq.rhs()) return false;
    std::vector<F> out;
    for (F& v : leibniz_variants(items_[a].f, eq.lhs(), eq.rhs())) {
      if (max_term(v) <= budget_.max_term_size) out.push_back(std::move(v));
    }
    if (out.empty()) return false;
    return emit(Rule::Leibniz, {items_[e].ref, items_[a].ref}, out, depth);
  }

  static std::vector<Term> distinct_args(const F& f) {
    const F& g = f.is(K::Not) ? f.child() : f;
    std::vector<Term> out;
    for (const Term& t : g.terms()) {
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    return out;
  }

  bool leibniz_atom(std::uint32_t i) {
    const std::vector<Term> args = distinct_args(items_[i].f);
    for (const Term& u : args) {
      for (std::uint32_t e : by_lhs_.find(u)) {
        if (leibniz(e, i)) return true;
      }
    }
    for (const Term& u : args) by_arg_.add(u, i);
    return false;
  }

  bool leibniz_eq(std::uint32_t e) {
    const Term lhs = items_[e].f.lhs();
    for (std::uint32_t a : by_arg_.find(lhs)) {
      if (a != e && leibniz(e, a)) return true;
    }
    by_lhs_.add(lhs, e);
    return false;
  }

  // --- beta phase -----------------------------------------------------------

  void done_beta(std::uint32_t b) {
    if (betas_[b].done) return;
    betas_[b].done = true;
    done_log_.push_back(b);
  }

  Outcome examine(std::uint32_t b) {
    const Alternatives& alts = betas_[b].alts;
    const std::uint32_t i = betas_[b].item;
    std::vector<FormulaRef> refuters;
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < alts.size(); ++j) {
      bool all = true;
      bool refuted = false;
      for (const F& g : alts[j]) {
        if (!present(g)) all = false;
        if (self_closing(g)) {
          refuted = true;
          break;
        }
        if (auto it = where_.find(complement(g)); it != where_.end()) {
          refuters.push_back(items_[it->second].ref);
          refuted = true;
          break;
        }
      }
      if (all && !refuted) {
        done_beta(b);
        return Outcome::Idle;
      }
      if (!refuted) open.push_back(j);
    }
    if (open.empty()) {
      done_beta(b);
      refuters.insert(refuters.begin(), items_[i].ref);
      record(Rule::Close, std::move(refuters), {});
      return Outcome::Closed;
    }
    if (open.size() == 1) {
      done_beta(b);
      refuters.insert(refuters.begin(), items_[i].ref);
      const Alternatives copy = alts;
      if (emit(Rule::BetaUnit, std::move(refuters), copy[open[0]], items_[i].depth)) {
        return Outcome::Closed;
      }
      return Outcome::Progress;
    }
    return Outcome::Idle;
  }

  // Units for every beta; splits only on ground formulas when ground_only.
  Outcome beta_pass(bool ground_only) {
    while (beta_head_ < beta_queue_.size()) {
      const std::uint32_t b = beta_queue_[beta_head_++];
      if (betas_[b].done) continue;
      Outcome o = examine(b);
      if (o != Outcome::Idle) return o;
    }
    for (std::uint32_t b = 0; b < betas_.size(); ++b) {
      if (betas_[b].done || (ground_only && !betas_[b].ground)) continue;
      done_beta(b);
      Alternatives alts = betas_[b].alts;
      if (alts.size() == 2 && alts[0].size() == 1) {
        alts[1].insert(alts[1].begin(), complement(alts[0][0]));
      }
      open_split(Rule::Split, {items_[betas_[b].item].ref}, std::move(alts));
      return Outcome::Split;
    }
    return Outcome::Idle;
  }

  void open_split(Rule r, std::vector<FormulaRef> premises, Alternatives alts) {
    std::vector<std::uint32_t> children;
    for (std::size_t k = 0; k < alts.size(); ++k) children.push_back(next_branch_++);
    const std::uint32_t id = record(r, std::move(premises), {});
    trace[id].children = children;
    trace[id].alternatives = alts;
    pending_ = Frame{Mark{}, id, std::move(alts), std::move(children), 0};
  }

  // --- level saturation -------------------------------------------------

  bool instantiate(std::size_t slot, std::uint32_t p) {
    const std::uint32_t gi = gammas_[slot].item;
    const F& q = items_[gi].f;
    const bool neg = q.is(K::Not);
    const F& quant = neg ? q.child() : q;
    F inst = substitute(quant.body(), quant.var(), pool_[p].t);
    if (neg) inst = F::negate(inst);
    return emit(Rule::Gamma, {items_[gi].ref, pool_[p].ref}, {inst}, items_[gi].depth,
                pool_[p].t);
  }

  Outcome gamma_round(bool ground_only) {
    const std::size_t G = gammas_.size();
    if (!ground_only && G > 0 && pool_.empty()) {
      const Term c = Term::var(next_var_++);
      if (emit(Rule::Domain, {}, {F::set(c)}, 0, c)) return Outcome::Closed;
      return Outcome::Progress;
    }
    const std::size_t before = items_.size();
    const std::size_t E = eligible_pool_.size();
    const std::size_t P = pool_.size();
    for (std::size_t g = 0; g < G; ++g) {
      Gamma& st = gammas_[g];
      const std::size_t stop = ground_only ? E : P;
      std::size_t& next = ground_only ? st.ground_next : st.all_next;
      if (next >= stop) continue;
      gamma_log_.push_back({g, st.ground_next, st.all_next});
      while (next < stop) {
        const std::uint32_t p =
            ground_only ? eligible_pool_[next] : static_cast<std::uint32_t>(next);
        ++next;
        if (instantiate(g, p)) return Outcome::Closed;
      }
    }
    return items_.size() != before ? Outcome::Progress : Outcome::Idle;
  }

  // Sethood of singletons and pairs of closed input terms.
  Outcome singleton_pair_round() {
    bool progress = false;
    const std::size_t n = input_pool_.size();
    auto derive = [&](Rule r, std::vector<FormulaRef> prem, const Term& s) {
      if (s.size() > budget_.max_term_size || derived_set_.count(s)) return false;
      if (present(F::set(s))) return false;
      derived_.push_back(s);
      derived_set_.insert(s);
      progress = true;
      return emit(r, std::move(prem), {F::set(s)}, 0);
    };
    for (std::size_t k = 0; k < n; ++k) {
      const PoolTerm& a = pool_[input_pool_[k]];
      if (derive(Rule::SingletonSet, {a.ref}, lib::singleton(a.t))) return Outcome::Closed;
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = k + 1; l < n; ++l) {
        const PoolTerm a = pool_[input_pool_[k]];
        const PoolTerm b = pool_[input_pool_[l]];
        if (derive(Rule::PairSet, {a.ref, b.ref}, lib::pair(a.t, b.t))) return Outcome::Closed;
      }
    }
    // singletons and pairs the branch already talks about
    for (std::size_t k = 0; k < mentions_.size(); ++k) {
      const Term s = mentions_[k];
      std::vector<FormulaRef> prem;
      for (const Term& a : s.args()) {
        auto it = pool_index_.find(a);
        if (it == pool_index_.end()) break;
        prem.push_back(pool_[it->second].ref);
      }
      if (prem.size() != s.args().size()) continue;
      const Rule r = s.args().size() == 1 ? Rule::SingletonSet : Rule::PairSet;
      if (derive(r, std::move(prem), s)) return Outcome::Closed;
    }
    return progress ? Outcome::Progress : Outcome::Idle;
  }

  Outcome next_not_equal() {
    while (neq_next_ < neqs_.size()) {
      const std::uint32_t i = neqs_[neq_next_++];
      const F& g = items_[i].f.child();
      bool witnessed = false;
      for (std::size_t p = recent_start(); p < pool_.size() && !witnessed; ++p) {
        const Term& t = pool_[p].t;
        witnessed = satisfied(F::negate(F::iff(F::member(t, g.lhs()), F::member(t, g.rhs()))));
      }
      if (witnessed) continue;
      const Term c = Term::var(next_var_++);
      F split = F::iff(F::member(c, g.lhs()), F::member(c, g.rhs()));
      const std::size_t before = items_.size();
      if (emit(Rule::NotEqual, {items_[i].ref}, {F::set(c), F::negate(split)}, items_[i].depth,
               c)) {
        return Outcome::Closed;
      }
      if (items_.size() != before) return Outcome::Progress;
    }
    return Outcome::Idle;
  }

  bool pick_cut() {
    for (std::uint32_t c : eligible_classes_) {
      const Term& cls = classes_[c];
      for (std::uint32_t p : eligible_pool_) {
        F m = F::member(pool_[p].t, cls);
        if (present(m) || present(F::negate(m))) continue;
        open_split(Rule::Cut, {}, {{m}, {F::negate(m)}});
        return true;
      }
    }
    return false;
  }

  // Develops the current branch until it closes, stays open, or splits.
  Outcome develop() {
    // cheap ground work first; anything that invents eigenvariables comes last
    for (;;) {
      if (saturate_alpha()) return Outcome::Closed;
      Outcome o = beta_pass(true);
      if (o != Outcome::Idle) {
        if (o == Outcome::Progress) continue;
        return o;
      }
      o = gamma_round(true);
      if (o == Outcome::Closed) return o;
      if (o == Outcome::Progress) continue;
      o = singleton_pair_round();
      if (o == Outcome::Closed) return o;
      if (o == Outcome::Progress) continue;
      if (pick_cut()) return Outcome::Split;
      o = beta_pass(false);
      if (o != Outcome::Idle) {
        if (o == Outcome::Progress) continue;
        return o;
      }
      o = next_not_equal();
      if (o == Outcome::Closed) return o;
      if (o == Outcome::Progress) continue;
      o = gamma_round(false);
      if (o == Outcome::Closed) return o;
      if (o == Outcome::Progress) continue;
      saturated = true;
      return Outcome::Open;
    }
  }

  // Enters the next child of the top frame; true if it closes at once.
  bool enter(Frame& fr) {
    const std::size_t k = fr.next++;
    branch_ = fr.children[k];
    std::vector<F> fresh;
    for (const F& g : fr.alts[k]) {
      if (!present(g) && std::find(fresh.begin(), fresh.end(), g) == fresh.end()) {
        fresh.push_back(g);
      }
    }
    const std::uint32_t id =
        record(Rule::Branch, {{fr.split, static_cast<std::uint32_t>(k)}}, fresh);
    for (std::uint32_t j = 0; j < fresh.size(); ++j) {
      if (insert(fresh[j], {id, j}, 0)) return true;
    }
    return false;
  }

  bool search() {
    for (;;) {
      Outcome o = develop();
      if (o == Outcome::Open) return false;
      if (o == Outcome::Split) {
        pending_.mark = mark();
        stack_.push_back(std::move(pending_));
      }
      for (;;) {
        if (stack_.empty()) return true;
        Frame& fr = stack_.back();
        restore(fr.mark);
        if (fr.next < fr.alts.size()) {
          if (!enter(fr)) break;
          continue;
        }
        stack_.pop_back();
      }
    }
  }
};

std::uint32_t fresh_for(const std::vector<Formula>& axioms, const Formula& goal) {
  std::vector<Formula> all = axioms;
  all.push_back(goal);
  return fresh_index(all);
}

// Whether a singleton/pair step feeds, directly or not, some closure.
bool uses_sp(const std::vector<TraceStep>& trace) {
  std::vector<char> needed(trace.size(), 0);
  for (std::size_t i = trace.size(); i-- > 0;) {
    const TraceStep& s = trace[i];
    if (s.rule == Rule::Close || s.rule == Rule::Split || s.rule == Rule::Cut) needed[i] = 1;
    if (!needed[i]) continue;
    for (const FormulaRef& p : s.premises) needed[p.step] = 1;
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (needed[i] && (trace[i].rule == Rule::SingletonSet || trace[i].rule == Rule::PairSet)) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view status_name(ProofStatus s) {
  switch (s) {
    case ProofStatus::Proved:
      return "Proved";
    case ProofStatus::Refuted:
      return "Refuted";
    case ProofStatus::OutOfBudget:
      return "OutOfBudget";
  }
  return "OutOfBudget";
}

std::string_view rule_name(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i) {
    if (kRuleNames[i] == name) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

ProofResult prove(const std::vector<Formula>& axioms, const Formula& goal,
                  const ProofBudget& budget) {
  const std::uint32_t fresh = fresh_for(axioms, goal);
  ProofResult res;
  std::size_t used = 0;
  {
    Engine e(budget, fresh);
    try {
      if (e.run(axioms, goal)) {
        res.status = ProofStatus::Proved;
        res.steps_used = e.counted;
        res.trace = std::move(e.trace);
        res.proved = goal;
        res.uses_singleton_pair = uses_sp(res.trace);
        return res;
      }
    } catch (const OutOfSteps&) {
      res.status = ProofStatus::OutOfBudget;
      res.steps_used = budget.max_steps;
      res.trace = std::move(e.trace);
      return res;
    }
    res.saturated = true;
    used = e.counted;
  }
  ProofBudget rest = budget;
  rest.max_steps = budget.max_steps - used;
  Engine e2(rest, fresh);
  try {
    const Formula neg = Formula::negate(goal);
    if (e2.run(axioms, neg)) {
      res.status = ProofStatus::Refuted;
      res.steps_used = used + e2.counted;
      res.trace = std::move(e2.trace);
      res.proved = neg;
      res.uses_singleton_pair = uses_sp(res.trace);
      return res;
    }
  } catch (const OutOfSteps&) {
  }
  res.status = ProofStatus::OutOfBudget;
  res.steps_used = budget.max_steps;
  return res;
}

ProofResult refute_sethood(const Formula& a, const ProofBudget& budget) {
  return prove({Formula::set(comprehension(a))}, Formula::falsum(), budget);
}

std::size_t counted_steps(const std::vector<TraceStep>& trace) {
  return static_cast<std::size_t>(std::count_if(trace.begin(), trace.end(), [](const TraceStep& s) {
    return s.rule != Rule::Assume && s.rule != Rule::NegateGoal && s.rule != Rule::Branch;
  }));
}

std::string trace_to_text(const std::vector<TraceStep>& trace) {
  std::ostringstream os;
  for (const TraceStep& s : trace) {
    os << s.id << " [b" << s.branch << "] " << rule_name(s.rule);
    if (!s.premises.empty()) {
      os << " from";
      for (const FormulaRef& p : s.premises) os << ' ' << p.step << '.' << p.index;
    }
    if (s.witness) os << " with " << to_string(*s.witness);
    os << ':';
    for (std::size_t i = 0; i < s.conclusions.size(); ++i) {
      os << (i ? " ; " : " ") << to_string(s.conclusions[i]);
    }
    for (std::size_t k = 0; k < s.children.size(); ++k) {
      os << (k ? " | " : " ") << "b" << s.children[k] << ":";
      for (const F& f : s.alternatives[k]) os << ' ' << to_string(f);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace nact
