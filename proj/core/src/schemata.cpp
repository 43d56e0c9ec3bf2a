#include "nact/schemata.hpp"

#include <algorithm>
#include <array>

#include "nact/library.hpp"
#include "nact/stratifier.hpp"
#include "nact/syntax.hpp"

namespace nact {

namespace {

using F = Formula;

struct SchemaRow {
  SchemaId id;
  std::string_view name;
};

constexpr std::array<SchemaRow, 30> kRows{{
    {SchemaId::Axiom5, "Axiom5"},     {SchemaId::Axiom6, "Axiom6"},
    {SchemaId::Axiom5a, "Axiom5a"},   {SchemaId::Axiom6c, "Axiom6c"},
    {SchemaId::Sharp1, "Sharp1"},     {SchemaId::Sharp2, "Sharp2"},
    {SchemaId::Sharp3, "Sharp3"},     {SchemaId::Sharp4, "Sharp4"},
    {SchemaId::StratCoS, "StratCoS"}, {SchemaId::PriNSA, "PriNSA"},
    {SchemaId::SiNSA, "SiNSA"},       {SchemaId::PriNSA2, "PriNSA2"},
    {SchemaId::SiNSA2, "SiNSA2"},     {SchemaId::PriNSA3, "PriNSA3"},
    {SchemaId::SiNSA3, "SiNSA3"},     {SchemaId::PriNGSA, "PriNGSA"},
    {SchemaId::SiNGSA, "SiNGSA"},     {SchemaId::PriNGSA2, "PriNGSA2"},
    {SchemaId::SiNGSA2, "SiNGSA2"},   {SchemaId::PriNSA0, "PriNSA0"},
    {SchemaId::ZF1, "ZF1"},           {SchemaId::ZF2, "ZF2"},
    {SchemaId::ZF3, "ZF3"},           {SchemaId::ZF4, "ZF4"},
    {SchemaId::ZF5, "ZF5"},           {SchemaId::ZF1R, "ZF1R"},
    {SchemaId::ZF2R, "ZF2R"},         {SchemaId::ZF3R, "ZF3R"},
    {SchemaId::ZF4R, "ZF4R"},         {SchemaId::StratAndNSA, "StratAndNSA"},
}};

Term v(std::uint32_t i) { return Term::var(i); }

bool is_zf(SchemaId id) {
  switch (id) {
    case SchemaId::ZF1:
    case SchemaId::ZF2:
    case SchemaId::ZF3:
    case SchemaId::ZF4:
    case SchemaId::ZF5:
    case SchemaId::ZF1R:
    case SchemaId::ZF2R:
    case SchemaId::ZF3R:
    case SchemaId::ZF4R:
      return true;
    default:
      return false;
  }
}

// Substitution of the comprehension term without the parameter check; extra
// parameters stay free and are closed off by the caller.
F sa_raw(const F& a) { return substitute(a, kX, comprehension(a)); }

F gsa_raw(const F& a, std::uint32_t n_bound) {
  std::vector<F> disjuncts{sa_raw(a)};
  const Term c = comprehension(a);
  const std::uint32_t b = max_var_index(a);
  for (std::uint32_t n = 1; n <= n_bound; ++n) {
    std::vector<F> links{F::member(c, v(b + 1))};
    for (std::uint32_t i = 1; i < n; ++i) links.push_back(F::member(v(b + i), v(b + i + 1)));
    links.push_back(substitute(a, kX, v(b + n)));
    F chain = conj_all(links);
    for (std::uint32_t i = n; i >= 1; --i) chain = F::exists(VarName{b + i}, chain);
    disjuncts.push_back(chain);
  }
  return disj_all(disjuncts);
}

F close_params(const F& f) {
  F out = f;
  std::vector<std::uint32_t> free(f.free_vars().begin(), f.free_vars().end());
  std::sort(free.rbegin(), free.rend());
  for (std::uint32_t i : free) out = F::forall(VarName{i}, out);
  return out;
}

F set_both(const F& a) {
  return F::conj(F::set(comprehension(a)), F::set(complement_class(a)));
}

}  // namespace

const std::vector<SchemaId>& all_schemata() {
  static const std::vector<SchemaId> ids = [] {
    std::vector<SchemaId> out;
    for (const auto& r : kRows) out.push_back(r.id);
    return out;
  }();
  return ids;
}

std::string_view schema_name(SchemaId id) {
  for (const auto& r : kRows) {
    if (r.id == id) return r.name;
  }
  return "?";
}

std::optional<SchemaId> schema_from_name(std::string_view name) {
  for (const auto& r : kRows) {
    if (r.name == name) return r.id;
  }
  return std::nullopt;
}

bool is_nsa_schema(SchemaId id) {
  switch (id) {
    case SchemaId::PriNSA:
    case SchemaId::SiNSA:
    case SchemaId::PriNSA2:
    case SchemaId::SiNSA2:
    case SchemaId::PriNSA3:
    case SchemaId::SiNSA3:
    case SchemaId::PriNGSA:
    case SchemaId::SiNGSA:
    case SchemaId::PriNGSA2:
    case SchemaId::SiNGSA2:
    case SchemaId::PriNSA0:
    case SchemaId::StratAndNSA:
      return true;
    default:
      return false;
  }
}

bool is_experimental(SchemaId id) { return id == SchemaId::PriNSA3; }

bool is_model_checkable(SchemaId id) {
  switch (id) {
    case SchemaId::Axiom5:
    case SchemaId::Axiom6:
    case SchemaId::Axiom5a:
    case SchemaId::Axiom6c:
    case SchemaId::Sharp1:
    case SchemaId::Sharp2:
    case SchemaId::Sharp3:
    case SchemaId::Sharp4:
      return true;
    default:
      return false;
  }
}

std::string_view choice_name(ChoiceAxiom c) {
  switch (c) {
    case ChoiceAxiom::None:
      return "none";
    case ChoiceAxiom::AC:
      return "AC";
    case ChoiceAxiom::DC:
      return "DC";
    case ChoiceAxiom::OrdUC:
      return "Ord~UC";
  }
  return "none";
}

bool SystemSpec::has_nsa() const {
  return std::any_of(active.begin(), active.end(), is_nsa_schema);
}

bool SystemSpec::two_fold() const {
  return has(SchemaId::PriNSA2) || has(SchemaId::SiNSA2) || has(SchemaId::PriNGSA2) ||
         has(SchemaId::SiNGSA2) || has(SchemaId::SiNSA3);
}

const std::vector<SystemSpec>& presets() {
  using S = SchemaId;
  static const std::vector<SystemSpec> all = [] {
    std::vector<SystemSpec> p;
    auto add = [&](std::string name, std::set<S> active, bool pf = false,
                   ChoiceAxiom choice = ChoiceAxiom::AC) {
      SystemSpec s;
      s.name = std::move(name);
      s.active = std::move(active);
      s.parameter_free_only = pf;
      s.choice = choice;
      p.push_back(std::move(s));
      return &p.back();
    };
    const std::set<S> sharp{S::Sharp1, S::Sharp2, S::Sharp3, S::Sharp4};
    auto with_sharp = [&](std::set<S> base) {
      base.insert(sharp.begin(), sharp.end());
      return base;
    };
    add("NACT#", {S::Axiom5, S::Axiom6}, false, ChoiceAxiom::DC);
    add("NACT#4", with_sharp({S::Axiom5, S::Axiom6}), false, ChoiceAxiom::DC);
    add("NACT+", {S::Axiom5a, S::Axiom6c});
    add("NACT+4", with_sharp({S::Axiom5a, S::Axiom6c}));
    add("NACT+Strat", {S::Axiom5a, S::Axiom6c, S::StratCoS});
    add("NACT-PriNSA", {S::PriNSA});
    add("NACT-SiNSA", {S::SiNSA});
    add("NACT-PriNSA2", {S::PriNSA2});
    add("NACT-SiNSA2", {S::SiNSA2});
    add("NACT#PriNSA", {S::Axiom5, S::PriNSA0}, true, ChoiceAxiom::DC);
    add("NACT+PriNSA2", {S::Axiom5a, S::Axiom6c, S::PriNSA2}, true);
    // further compositions named in the text
    add("NACT-PriNGSA", {S::PriNGSA});
    add("NACT-SiNGSA", {S::SiNGSA})->meta_singsa = true;
    add("NACT-PriNGSA2", {S::PriNGSA2});
    add("NACT-SiNGSA2", {S::SiNGSA2})->meta_singsa = true;
    add("NACT-PriNSA3", {S::PriNSA3});
    add("NACT-SiNSA3", {S::SiNSA3});
    add("NACT+PriNSA3", {S::Axiom5a, S::Axiom6c, S::PriNSA3}, true);
    add("NACT-StratNSA", {S::StratAndNSA});
    add("NACT**", {S::PriNSA}, true)->hnp_gate = true;
    return p;
  }();
  return all;
}

std::optional<SystemSpec> preset(std::string_view name) {
  for (const auto& s : presets()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

Term comprehension(const Formula& a) { return Term::abstraction(kX, a, true); }

Term complement_class(const Formula& a) {
  return Term::abstraction(kX, F::negate(a), true);
}

Formula make_sa_formula(const Formula& a) {
  if (!is_parameter_free(a)) throw NotParameterFree(to_string(a));
  return sa_raw(a);
}

Formula make_gsa_formula(const Formula& a, std::uint32_t n_bound) {
  if (!is_parameter_free(a)) throw NotParameterFree(to_string(a));
  if (n_bound == 0) throw std::invalid_argument("GSA chain bound must be at least 1");
  return gsa_raw(a, n_bound);
}

std::vector<SchemaInstance> instantiate(const SystemSpec& system, const Formula& a,
                                        const InstantiateOptions& opts) {
  using S = SchemaId;
  const bool param_free = is_parameter_free(a);
  if (system.parameter_free_only && !param_free) throw NotParameterFree(to_string(a));

  const Term c = comprehension(a);
  const Term k = complement_class(a);
  const F not_sa = F::negate(sa_raw(a));
  const std::uint32_t chain = std::max<std::uint32_t>(1, system.gsa_chain_bound);
  const F not_gsa = F::negate(gsa_raw(a, chain));
  const bool has_set = contains_set_atom(a);

  std::optional<bool> stratified;
  auto strat = [&] {
    if (!stratified) stratified = is_stratified(a);
    return *stratified;
  };
  const bool known_proper =
      std::any_of(opts.known_proper.begin(), opts.known_proper.end(),
                  [&](const Term& t) { return t == c; });

  std::vector<SchemaInstance> out;
  for (S id : system.active) {
    if (is_zf(id)) continue;
    SchemaInstance inst{id, a, {}, true, {}};
    auto reject = [&](std::string why) {
      inst.side_condition_ok = false;
      inst.reason = std::move(why);
    };
    auto no_set_atom = [&] {
      if (has_set) reject("formula contains the set predicate");
    };
    switch (id) {
      case S::Axiom5:
        inst.result = {F::negate(F::iff(F::set(c), F::set(k)))};
        break;
      case S::Axiom6:
        inst.result = {F::implies(F::slim(c), F::set(c))};
        break;
      case S::Axiom5a:
        inst.result = {F::disj(F::set(c), F::set(k))};
        break;
      case S::Axiom6c:
        inst.result = {F::implies(F::slim(c), set_both(a))};
        break;
      case S::Sharp1:
        inst.result = {F::slim(lib::omega())};
        break;
      case S::Sharp2:
        inst.result = {F::implies(F::slim(c), F::slim(lib::power(c)))};
        break;
      case S::Sharp3: {
        const std::uint32_t y = max_var_index(c) + 1;
        F elems = F::forall(VarName{y}, F::implies(F::member(v(y), c), F::slim(v(y))));
        inst.result = {F::implies(F::conj(F::slim(c), elems), F::slim(lib::big_union(c)))};
        break;
      }
      case S::Sharp4: {
        const std::uint32_t f = max_var_index(c) + 1;
        F body = F::implies(F::conj(F::slim(c), lib::function(v(f))),
                            F::slim(lib::image(v(f), c)));
        inst.result = {F::forall(VarName{f}, body)};
        break;
      }
      case S::StratCoS:
        if (strat()) {
          inst.result = {F::set(c)};
        } else {
          reject("not stratified");
        }
        break;
      case S::PriNSA:
        inst.result = {F::implies(not_sa, F::set(c))};
        break;
      case S::SiNSA:
        no_set_atom();
        inst.result = {F::iff(not_sa, F::set(c))};
        break;
      case S::PriNSA2:
        inst.result = {F::implies(not_sa, set_both(a))};
        break;
      case S::SiNSA2:
        no_set_atom();
        inst.result = {F::iff(not_sa, set_both(a))};
        break;
      case S::PriNSA3: {
        F not_sa_neg = F::negate(sa_raw(F::negate(a)));
        inst.result = {F::implies(F::disj(not_sa, not_sa_neg), F::set(c))};
        break;
      }
      case S::SiNSA3:
        inst.result = {F::implies(not_sa, set_both(a)),
                       F::implies(sa_raw(a), F::disj(F::negate(F::set(c)), lib::mighty(c)))};
        break;
      case S::PriNGSA:
        inst.result = {F::implies(not_gsa, F::set(c))};
        break;
      case S::SiNGSA:
        no_set_atom();
        if (system.meta_singsa && known_proper) reject("class already known to be proper");
        inst.result = {F::iff(not_gsa, F::set(c))};
        break;
      case S::PriNGSA2:
        inst.result = {F::implies(not_gsa, set_both(a))};
        break;
      case S::SiNGSA2:
        no_set_atom();
        if (system.meta_singsa && known_proper) reject("class already known to be proper");
        inst.result = {F::iff(not_gsa, set_both(a))};
        break;
      case S::PriNSA0:
        if (!param_free) reject("formula has parameters");
        inst.result = {F::implies(not_sa, F::set(c))};
        break;
      case S::StratAndNSA:
        no_set_atom();
        if (!strat()) reject("not stratified");
        inst.result = {F::implies(not_sa, F::set(c))};
        break;
      default:
        break;
    }
    for (F& r : inst.result) r = close_params(r);
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<Formula> axioms_for(const SystemSpec& system, const Formula& a,
                                const InstantiateOptions& opts) {
  std::vector<Formula> out;
  for (const auto& inst : instantiate(system, a, opts)) {
    if (!inst.side_condition_ok) continue;
    out.insert(out.end(), inst.result.begin(), inst.result.end());
  }
  return out;
}

std::vector<std::pair<std::string, Formula>> zf_targets(const SystemSpec& system,
                                                        ZfVariant variant) {
  const bool restricted =
      variant == ZfVariant::Restricted || (variant == ZfVariant::Auto && system.two_fold());
  const VarName a{1}, b{2}, d{3}, f{4};
  const Term ta = v(1), tb = v(2), td = v(3), tf = v(4);
  std::vector<std::pair<std::string, Formula>> out;
  if (!restricted) {
    out.emplace_back("ZF1", F::set(lib::omega()));
    out.emplace_back("ZF2", F::forall(b, F::set(lib::power(tb))));
    out.emplace_back("ZF3", F::forall(b, F::implies(F::fund(tb), F::set(lib::big_union(tb)))));
    out.emplace_back(
        "ZF4", F::forall(f, F::forall(d, F::implies(F::conj(F::fund(td), lib::function(tf)),
                                                    F::set(lib::image(tf, td))))));
    out.emplace_back(
        "ZF5", F::forall(a, F::forall(b, F::implies(F::conj(F::set(ta), F::set(tb)),
                                                    F::set(lib::pair(ta, tb))))));
  } else {
    out.emplace_back("ZF1R", F::set(lib::omega()));
    out.emplace_back("ZF2R", F::forall(b, F::implies(F::fund(tb), F::set(lib::power(tb)))));
    out.emplace_back("ZF3R", F::forall(b, F::implies(F::fund(tb), F::set(lib::big_union(tb)))));
    Term img = lib::image(tf, td);
    out.emplace_back("ZF4R", F::forall(f, F::forall(d, F::implies(F::conj(F::fund(img),
                                                                          lib::function(tf)),
                                                                  F::set(img)))));
  }
  return out;
}

}  // namespace nact
