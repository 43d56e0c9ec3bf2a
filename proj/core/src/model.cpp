#include "nact/model.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

#include "nact/library.hpp"
#include "nact/syntax.hpp"

namespace nact {

using F = Formula;
using K = Formula::Kind;

bool FiniteModel::valid() const {
  if (n == 0 || n > 16 || ext.size() != n) return false;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (ext[i] & ~universe()) return false;
    for (std::uint32_t j = 0; j < i; ++j) {
      if (ext[i] == ext[j]) return false;
    }
  }
  return true;
}

bool FiniteModel::is_set(ClassMask c) const { return element_of(c) >= 0; }

int FiniteModel::element_of(ClassMask c) const {
  for (std::uint32_t i = 0; i < n; ++i) {
    if (ext[i] == c) return static_cast<int>(i);
  }
  return -1;
}

std::string FiniteModel::to_text() const {
  std::string out = std::to_string(n) + ":";
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i) out += '/';
    for (std::uint32_t j = 0; j < n; ++j) out += (ext[i] >> j) & 1 ? '1' : '0';
  }
  return out;
}

FiniteModel FiniteModel::from_text(std::string_view text) {
  auto bad = [&] { return std::invalid_argument("bad model text: " + std::string(text)); };
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) throw bad();
  FiniteModel m;
  m.n = 0;
  for (char c : text.substr(0, colon)) {
    if (c < '0' || c > '9') throw bad();
    m.n = m.n * 10 + static_cast<std::uint32_t>(c - '0');
    if (m.n > 16) throw bad();
  }
  std::string_view rows = text.substr(colon + 1);
  m.ext.clear();
  for (;;) {
    const auto slash = rows.find('/');
    std::string_view row = rows.substr(0, slash);
    if (row.size() != m.n) throw bad();
    ClassMask mask = 0;
    for (std::uint32_t j = 0; j < m.n; ++j) {
      if (row[j] == '1') {
        mask |= ClassMask{1} << j;
      } else if (row[j] != '0') {
        throw bad();
      }
    }
    m.ext.push_back(mask);
    if (slash == std::string_view::npos) break;
    rows = rows.substr(slash + 1);
  }
  if (!m.valid()) throw bad();
  return m;
}

namespace {

class Evaluator {
 public:
  Evaluator(const FiniteModel& m, Env env) : m_(m), env_(std::move(env)) {}

  bool formula(const F& f) {
    switch (f.kind()) {
      case K::Verum:
        return true;
      case K::Falsum:
        return false;
      case K::Member: {
        const int e = element(f.lhs());
        return e >= 0 && ((cls(f.rhs()) >> e) & 1);
      }
      case K::Equal:
        return cls(f.lhs()) == cls(f.rhs());
      case K::Set:
        return element(f.arg()) >= 0;
      case K::Slim: {
        const int k = std::popcount(cls(f.arg()));
        return k < static_cast<int>(m_.n) - k;
      }
      case K::Fund: {
        // some element of the class shares nothing with it
        const ClassMask c = cls(f.arg());
        for (std::uint32_t u = 0; u < m_.n; ++u) {
          if (((c >> u) & 1) && (m_.ext[u] & c) == 0) return true;
        }
        return false;
      }
      case K::Not:
        return !formula(f.child());
      case K::And:
        return formula(f.left()) && formula(f.right());
      case K::Or:
        return formula(f.left()) || formula(f.right());
      case K::Implies:
        return !formula(f.left()) || formula(f.right());
      case K::Iff:
        return formula(f.left()) == formula(f.right());
      case K::ForAll:
      case K::Exists: {
        const bool all = f.is(K::ForAll);
        for (std::uint32_t u = 0; u < m_.n; ++u) {
          env_.push_back({f.var().index, false, u});
          const bool v = formula(f.body());
          env_.pop_back();
          if (v != all) return !all;
        }
        return all;
      }
    }
    return false;
  }

  ClassMask cls(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        const Binding& b = lookup(t);
        return b.is_class ? b.value : m_.ext[b.value];
      }
      case Term::Kind::Abstraction: {
        ClassMask out = 0;
        for (std::uint32_t u = 0; u < m_.n; ++u) {
          env_.push_back({t.var().index, false, u});
          if (formula(t.body())) out |= ClassMask{1} << u;
          env_.pop_back();
        }
        return out;
      }
      case Term::Kind::Named: {
        const bool closed = t.closed();
        if (closed) {
          if (auto it = closed_.find(t); it != closed_.end()) return it->second;
        }
        auto def = definition(t);
        if (!def) throw std::invalid_argument("unknown term " + to_string(t));
        const ClassMask v = cls(*def);
        if (closed) closed_.emplace(t, v);
        return v;
      }
    }
    return 0;
  }

  // The element a term denotes, or -1 when its class is not a set.
  int element(const Term& t) {
    if (t.is_var()) {
      const Binding& b = lookup(t);
      if (!b.is_class) return static_cast<int>(b.value);
      return m_.element_of(b.value);
    }
    return m_.element_of(cls(t));
  }

 private:
  const FiniteModel& m_;
  Env env_;
  std::unordered_map<Term, ClassMask, TermHash> closed_;

  const Binding& lookup(const Term& t) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->var == t.var().index) return *it;
    }
    throw UnboundVariable(to_string(t));
  }
};

}  // namespace

bool eval(const FiniteModel& m, const Formula& f, const Env& env) {
  return Evaluator(m, env).formula(f);
}

ClassMask eval_class(const FiniteModel& m, const Term& t, const Env& env) {
  return Evaluator(m, env).cls(t);
}

std::string_view size_name(SizeKind k) {
  switch (k) {
    case SizeKind::Slim:
      return "Slim";
    case SizeKind::Medium:
      return "Medium";
    case SizeKind::Mighty:
      return "Mighty";
  }
  return "Slim";
}

ClassKind classify(const FiniteModel& m, ClassMask c) {
  const int k = std::popcount(c & m.universe());
  const int rest = static_cast<int>(m.n) - k;
  ClassKind out;
  if (k < rest) {
    out.size = SizeKind::Slim;
  } else if (k > rest) {
    out.size = SizeKind::Mighty;
  } else {
    out.size = SizeKind::Medium;
    out.medium_c = m.is_set(c) && m.is_set(m.universe() & ~c);
    out.medium_nc = !out.medium_c;
  }
  return out;
}

Formula schema_axiom(SchemaId id) {
  using S = SchemaId;
  const Term x = Term::var(0);
  const Term ko = lib::complement(x);
  const F both = F::conj(F::set(x), F::set(ko));
  switch (id) {
    case S::Axiom5:
      return F::negate(F::iff(F::set(x), F::set(ko)));
    case S::Axiom6:
      return F::implies(F::slim(x), F::set(x));
    case S::Axiom5a:
      return F::disj(F::set(x), F::set(ko));
    case S::Axiom6c:
      return F::implies(F::slim(x), both);
    case S::Sharp1:
      return F::slim(lib::omega());
    case S::Sharp2:
      return F::implies(F::slim(x), F::slim(lib::power(x)));
    case S::Sharp3: {
      const Term y = Term::var(1);
      F elems = F::forall(VarName{1}, F::implies(F::member(y, x), F::slim(y)));
      return F::implies(F::conj(F::slim(x), elems), F::slim(lib::big_union(x)));
    }
    case S::Sharp4: {
      const Term f = Term::var(1);
      return F::forall(VarName{1}, F::implies(F::conj(F::slim(x), lib::function(f)),
                                              F::slim(lib::image(f, x))));
    }
    default:
      throw NotModelCheckable(std::string(schema_name(id)));
  }
}

SystemCheck check_system(const FiniteModel& m, const SystemSpec& system) {
  if (!m.valid()) throw std::invalid_argument("invalid model " + m.to_text());
  std::vector<std::pair<SchemaId, F>> axioms;
  for (SchemaId id : system.active) {
    if (!is_model_checkable(id)) throw NotModelCheckable(std::string(schema_name(id)));
    axioms.emplace_back(id, schema_axiom(id));
  }
  SystemCheck out;
  const ClassMask all = m.universe();
  for (const auto& [id, ax] : axioms) {
    for (ClassMask c = 0;; ++c) {
      if (!eval(m, ax, {{0, true, c}})) {
        out.holds = false;
        out.counterexamples.push_back({id, c});
      }
      if (c == all) break;
    }
    // the constructions exist as classes always; say where they are not sets
    auto unrealized = [&](const Term& t, const char* what) {
      std::size_t k = 0;
      for (ClassMask c = 0;; ++c) {
        if (!m.is_set(eval_class(m, t, {{0, true, c}}))) ++k;
        if (c == all) break;
      }
      if (k) {
        out.partial.push_back(std::string(schema_name(id)) + ": " + what + " not a set for " +
                              std::to_string(k) + " classes");
      }
    };
    if (id == SchemaId::Sharp2) unrealized(lib::power(Term::var(0)), "Power(X)");
    if (id == SchemaId::Sharp3) unrealized(lib::big_union(Term::var(0)), "Union(X)");
    if (id == SchemaId::Sharp4) {
      std::size_t k = 0;
      for (std::uint32_t a = 0; a < m.n; ++a) {
        for (std::uint32_t b = 0; b < m.n; ++b) {
          Env env{{1, false, a}, {2, false, b}};
          if (!eval(m, F::set(lib::ordered_pair(Term::var(1), Term::var(2))), env)) ++k;
        }
      }
      if (k) {
        out.partial.push_back("Sharp4: ordered pair not a set for " + std::to_string(k) +
                              " element pairs");
      }
    }
  }
  return out;
}

std::vector<FiniteModel> all_models(std::uint32_t n) {
  if (n == 0 || n > 4) throw std::invalid_argument("model size must be 1..4");
  std::vector<FiniteModel> out;
  const ClassMask classes = ClassMask{1} << n;
  FiniteModel m;
  m.n = n;
  m.ext.assign(n, 0);
  // odometer over ext rows, row 0 most significant
  for (;;) {
    if (m.valid()) out.push_back(m);
    std::uint32_t i = n;
    while (i > 0) {
      --i;
      if (++m.ext[i] < classes) break;
      m.ext[i] = 0;
      if (i == 0) return out;
    }
  }
}

std::vector<FiniteModel> search_models(std::uint32_t n_max, const SystemSpec& system) {
  std::vector<FiniteModel> out;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    for (FiniteModel& m : all_models(n)) {
      if (check_system(m, system).holds) out.push_back(std::move(m));
    }
  }
  return out;
}

std::size_t trichotomy_violations(const FiniteModel& m) {
  const ClassMask all = m.universe();
  std::size_t bad = 0;
  for (ClassMask c = 0;; ++c) {
    const int k = std::popcount(c);
    const int rest = static_cast<int>(m.n) - k;
    const bool slim = k < rest, mighty = k > rest, medium = k == rest;
    if (slim + mighty + medium != 1) ++bad;
    const ClassKind kind = classify(m, c);
    if ((kind.size == SizeKind::Slim) != slim || (kind.size == SizeKind::Mighty) != mighty) ++bad;
    // complement involution
    const ClassKind co = classify(m, all & ~c);
    if ((kind.size == SizeKind::Slim) != (co.size == SizeKind::Mighty)) ++bad;
    if ((kind.size == SizeKind::Medium) != (co.size == SizeKind::Medium)) ++bad;
    if (c == all) break;
  }
  // Slim u Mighty = Ko(Medium), with Medium read as "pairs off with its
  // complement element by element"
  for (ClassMask c = 0;; ++c) {
    ClassMask in = c, out = all & ~c;
    while (in && out) {
      in &= in - 1;
      out &= out - 1;
    }
    const bool equipollent = !in && !out;
    const SizeKind s = classify(m, c).size;
    const bool slim_or_mighty = s == SizeKind::Slim || s == SizeKind::Mighty;
    if (slim_or_mighty != !equipollent) ++bad;
    if (c == all) break;
  }
  return bad;
}

PathoReport patho_report(const FiniteModel& m) {
  PathoReport r;
  const ClassMask all = m.universe();
  for (ClassMask c = 0;; ++c) {
    const ClassKind k = classify(m, c);
    const bool described = k.size == SizeKind::Medium && m.is_set(all & ~c);
    if (!m.is_set(c)) {
      ++r.proper;
      if (described) ++r.proper_described;
    } else if (described) {
      ++r.described_not_proper;
    }
    if (k.medium_nc) ++r.medium_nc;
    if (c == all) break;
  }
  return r;
}

}  // namespace nact
