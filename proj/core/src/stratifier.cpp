#include "nact/stratifier.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "nact/library.hpp"
#include "nact/syntax.hpp"

namespace nact {

namespace {

using F = Formula;

class Builder {
 public:
  explicit Builder(std::uint32_t first_fresh) : next_(first_fresh) {}

  StratifyResult result;

  F walk(const F& f) {
    using K = F::Kind;
    switch (f.kind()) {
      case K::Verum:
      case K::Falsum:
        return f;
      case K::Member: {
        auto [l, nl] = term(f.lhs());
        auto [r, nr] = term(f.rhs());
        F out = F::member(l, r);
        add(nl, nr, 1, out);
        return out;
      }
      case K::Equal: {
        auto [l, nl] = term(f.lhs());
        auto [r, nr] = term(f.rhs());
        F out = F::equal(l, r);
        add(nl, nr, 0, out);
        return out;
      }
      case K::Set:
        return F::set(term(f.arg()).first);
      case K::Slim:
        return F::slim(term(f.arg()).first);
      case K::Fund: {
        // fund(t) == exists y (y in t and forall w not (w in y and w in t))
        const Term& t = f.arg();
        const std::uint32_t base = next_;
        next_ += 2;
        VarName y{base}, w{base + 1};
        Term ty = Term::var(y), tw = Term::var(w);
        F inner = F::forall(w, F::negate(F::conj(F::member(tw, ty), F::member(tw, t))));
        return walk(F::exists(y, F::conj(F::member(ty, t), inner)));
      }
      case K::Not:
        return F::negate(walk(f.child()));
      case K::And:
        return F::conj(walk(f.left()), walk(f.right()));
      case K::Or:
        return F::disj(walk(f.left()), walk(f.right()));
      case K::Implies:
        return F::implies(walk(f.left()), walk(f.right()));
      case K::Iff:
        return F::iff(walk(f.left()), walk(f.right()));
      case K::ForAll:
      case K::Exists: {
        auto [v, body] = rebind(f.var(), f.body());
        return f.is(K::ForAll) ? F::forall(v, body) : F::exists(v, body);
      }
    }
    return f;
  }

 private:
  std::uint32_t next_;
  std::map<std::uint32_t, std::size_t> var_nodes_;

  std::pair<VarName, F> rebind(VarName old, const F& body) {
    VarName fresh{next_++};
    F renamed = substitute(body, old, Term::var(fresh));
    return {fresh, walk(renamed)};
  }

  std::size_t var_node(std::uint32_t index) {
    auto it = var_nodes_.find(index);
    if (it != var_nodes_.end()) return it->second;
    std::size_t id = result.nodes.size();
    result.nodes.push_back({TypeNode::Kind::Var, index, VarName{index}.display()});
    var_nodes_.emplace(index, id);
    return id;
  }

  std::pair<Term, std::size_t> term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var:
        return {t, var_node(t.var().index)};
      case Term::Kind::Abstraction: {
        auto [v, body] = rebind(t.var(), t.body());
        Term out = Term::abstraction(v, body, t.restricted());
        std::size_t id = result.nodes.size();
        result.nodes.push_back({TypeNode::Kind::Abstraction, v.index, to_string(out)});
        add(var_node(v.index), id, 1, out);
        return {out, id};
      }
      case Term::Kind::Named: {
        // only names without a definition survive unfolding; they stay opaque
        std::size_t id = result.nodes.size();
        result.nodes.push_back({TypeNode::Kind::Abstraction, 0, to_string(t)});
        return {t, id};
      }
    }
    return {t, 0};
  }

  void add(std::size_t lo, std::size_t hi, int diff, const F& origin) {
    result.constraints.push_back({lo, hi, diff, to_string(origin)});
  }
  void add(std::size_t lo, std::size_t hi, int diff, const Term& origin) {
    result.constraints.push_back({lo, hi, diff, to_string(origin)});
  }
};

struct Edge {
  std::size_t to;
  int weight;
  std::size_t constraint;
};

}  // namespace

StratifyResult stratify(const Formula& input) {
  Formula f = unfold_named(input);
  Builder b(max_var_index(f) + 1);
  b.result.renamed = b.walk(f);
  StratifyResult r = std::move(b.result);

  const std::size_t n = r.nodes.size();
  std::vector<std::vector<Edge>> adj(n);
  for (std::size_t i = 0; i < r.constraints.size(); ++i) {
    const auto& c = r.constraints[i];
    adj[c.lo].push_back({c.hi, c.diff, i});
    adj[c.hi].push_back({c.lo, -c.diff, i});
  }

  constexpr int kUnset = std::numeric_limits<int>::min();
  std::vector<int> pot(n, kUnset);
  std::vector<std::size_t> parent(n, n), parent_edge(n, 0), depth(n, 0);
  std::vector<std::size_t> comp(n, 0);
  std::size_t ncomp = 0;

  auto cycle_from = [&](std::size_t u, std::size_t v, std::size_t bad) {
    std::vector<std::size_t> up_u, up_v;
    while (u != v) {
      if (depth[u] >= depth[v]) {
        up_u.push_back(parent_edge[u]);
        u = parent[u];
      } else {
        up_v.push_back(parent_edge[v]);
        v = parent[v];
      }
    }
    std::vector<TypeConstraint> cyc;
    for (auto it = up_u.rbegin(); it != up_u.rend(); ++it) cyc.push_back(r.constraints[*it]);
    cyc.push_back(r.constraints[bad]);
    for (std::size_t e : up_v) cyc.push_back(r.constraints[e]);
    return cyc;
  };

  for (std::size_t s = 0; s < n; ++s) {
    if (pot[s] != kUnset) continue;
    pot[s] = 0;
    comp[s] = ncomp;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (const Edge& e : adj[u]) {
        if (pot[e.to] == kUnset) {
          pot[e.to] = pot[u] + e.weight;
          parent[e.to] = u;
          parent_edge[e.to] = e.constraint;
          depth[e.to] = depth[u] + 1;
          comp[e.to] = ncomp;
          queue.push_back(e.to);
        } else if (pot[e.to] != pot[u] + e.weight) {
          r.stratified = false;
          r.cycle = cycle_from(u, e.to, e.constraint);
          return r;
        }
      }
    }
    ++ncomp;
  }

  std::vector<int> lowest(ncomp, std::numeric_limits<int>::max());
  for (std::size_t i = 0; i < n; ++i) lowest[comp[i]] = std::min(lowest[comp[i]], pot[i]);
  r.types.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.types[i] = pot[i] - lowest[comp[i]];
  r.stratified = true;
  return r;
}

bool is_stratified(const Formula& f) { return stratify(f).stratified; }

bool satisfies(const StratifyResult& r, const std::vector<int>& types) {
  if (types.size() != r.nodes.size()) return false;
  return std::all_of(r.constraints.begin(), r.constraints.end(), [&](const TypeConstraint& c) {
    return types[c.hi] == types[c.lo] + c.diff;
  });
}

}  // namespace nact
