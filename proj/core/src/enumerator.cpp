#include "nact/enumerator.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

#include "nact/syntax.hpp"

namespace nact {

namespace detail {

struct EnumCache {
  explicit EnumCache(std::uint32_t p) : params(p) {}

  std::uint32_t params;
  std::mutex mu;
  std::map<std::pair<std::size_t, std::uint32_t>, std::vector<Formula>> gen;
  std::map<std::size_t, std::vector<Formula>> top;
  std::map<std::size_t, std::unordered_map<Formula, std::size_t, FormulaHash>> top_index;

  // Formulas of exactly `size` nodes at binder depth `depth`, in order.
  const std::vector<Formula>& level(std::size_t size, std::uint32_t depth) {
    auto key = std::make_pair(size, depth);
    if (auto it = gen.find(key); it != gen.end()) return it->second;
    std::vector<Formula> out;
    const std::uint32_t nvars = params + depth;
    if (size == 3) {
      for (std::uint32_t i = 0; i < nvars; ++i)
        for (std::uint32_t j = 0; j < nvars; ++j)
          out.push_back(Formula::member(Term::var(i), Term::var(j)));
    } else if (size > 3) {
      for (const Formula& a : level(size - 1, depth)) out.push_back(Formula::negate(a));
      for (std::size_t ls = 3; ls + 3 <= size - 1; ++ls) {
        const auto& lefts = level(ls, depth);
        const auto& rights = level(size - 1 - ls, depth);
        for (const Formula& a : lefts)
          for (const Formula& b : rights) out.push_back(Formula::conj(a, b));
      }
      const VarName bound{params + depth};
      for (const Formula& a : level(size - 1, depth + 1)) {
        if (a.has_free(bound)) out.push_back(Formula::forall(bound, a));
      }
    }
    return gen.emplace(key, std::move(out)).first->second;
  }

  const std::vector<Formula>& size_class(std::size_t size) {
    if (auto it = top.find(size); it != top.end()) return it->second;
    std::vector<Formula> out;
    if (size == 1) {
      out = {Formula::verum(), Formula::falsum()};
    } else if (size >= 3) {
      out = level(size, 0);
    }
    return top.emplace(size, std::move(out)).first->second;
  }

  const std::unordered_map<Formula, std::size_t, FormulaHash>& class_index(std::size_t size) {
    if (auto it = top_index.find(size); it != top_index.end()) return it->second;
    std::unordered_map<Formula, std::size_t, FormulaHash> idx;
    const auto& cls = size_class(size);
    idx.reserve(cls.size());
    for (std::size_t i = 0; i < cls.size(); ++i) idx.emplace(cls[i], i);
    return top_index.emplace(size, std::move(idx)).first->second;
  }
};

}  // namespace detail

namespace {

std::shared_ptr<detail::EnumCache> shared_cache(std::uint32_t params) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<detail::EnumCache>> caches;
  std::lock_guard lock(mu);
  auto& c = caches[params];
  if (!c) c = std::make_shared<detail::EnumCache>(params);
  return c;
}

bool canonical_at(const Formula& f, std::uint32_t p, std::uint32_t depth) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Member:
      return f.lhs().is_var() && f.rhs().is_var() && f.lhs().var().index < p + depth &&
             f.rhs().var().index < p + depth;
    case K::Not:
      return canonical_at(f.child(), p, depth);
    case K::And:
      return canonical_at(f.left(), p, depth) && canonical_at(f.right(), p, depth);
    case K::ForAll:
      return f.var().index == p + depth && f.body().has_free(f.var()) &&
             canonical_at(f.body(), p, depth + 1);
    default:
      return false;
  }
}

Formula renumber(const Formula& f, std::uint32_t p, std::uint32_t depth,
                 std::map<std::uint32_t, std::uint32_t>& env) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Member: {
      if (!f.lhs().is_var() || !f.rhs().is_var()) {
        throw NotCanonical("membership between non-variables: " + to_string(f));
      }
      auto map = [&](const Term& t) {
        auto it = env.find(t.var().index);
        return it == env.end() ? t : Term::var(it->second);
      };
      return Formula::member(map(f.lhs()), map(f.rhs()));
    }
    case K::Not:
      return Formula::negate(renumber(f.child(), p, depth, env));
    case K::And:
      return Formula::conj(renumber(f.left(), p, depth, env), renumber(f.right(), p, depth, env));
    case K::ForAll: {
      const std::uint32_t old = f.var().index;
      auto saved = env.find(old) == env.end() ? std::optional<std::uint32_t>{}
                                              : std::optional<std::uint32_t>{env[old]};
      env[old] = p + depth;
      Formula body = renumber(f.body(), p, depth + 1, env);
      if (saved) {
        env[old] = *saved;
      } else {
        env.erase(old);
      }
      return Formula::forall(VarName{p + depth}, body);
    }
    default:
      throw NotCanonical("outside the enumerated core: " + to_string(f));
  }
}

}  // namespace

FormulaStream::FormulaStream(EnumOptions opts)
    : opts_(opts), cache_(shared_cache(opts.parameters)) {}

std::optional<Formula> FormulaStream::next() {
  std::lock_guard lock(cache_->mu);
  for (;;) {
    if (opts_.max_len != 0 && size_ > opts_.max_len) return std::nullopt;
    const auto& cls = cache_->size_class(size_);
    if (in_size_ < cls.size()) {
      ++pos_;
      return cls[in_size_++];
    }
    before_ += cls.size();
    ++size_;
    in_size_ = 0;
  }
}

void FormulaStream::seek(std::size_t pos) {
  pos_ = 0;
  size_ = 1;
  in_size_ = 0;
  before_ = 0;
  std::lock_guard lock(cache_->mu);
  for (;;) {
    if (opts_.max_len != 0 && size_ > opts_.max_len) return;
    const auto& cls = cache_->size_class(size_);
    if (pos - before_ < cls.size()) {
      in_size_ = pos - before_;
      pos_ = pos;
      return;
    }
    before_ += cls.size();
    ++size_;
  }
}

std::vector<Formula> enumerate(std::size_t k, EnumOptions opts) {
  FormulaStream s(opts);
  std::vector<Formula> out;
  out.reserve(k);
  while (out.size() < k) {
    auto f = s.next();
    if (!f) break;
    out.push_back(std::move(*f));
  }
  return out;
}

std::size_t count_of_size(std::size_t size, EnumOptions opts) {
  auto cache = shared_cache(opts.parameters);
  std::lock_guard lock(cache->mu);
  return cache->size_class(size).size();
}

bool is_enumerator_canonical(const Formula& f, EnumOptions opts) {
  if (f.is(Formula::Kind::Verum) || f.is(Formula::Kind::Falsum)) return true;
  return canonical_at(f, opts.parameters, 0);
}

std::size_t index_of(const Formula& f, EnumOptions opts) {
  if (!is_enumerator_canonical(f, opts)) throw NotCanonical(to_string(f));
  auto cache = shared_cache(opts.parameters);
  std::lock_guard lock(cache->mu);
  std::size_t before = 0;
  for (std::size_t s = 1; s < f.size(); ++s) before += cache->size_class(s).size();
  const auto& idx = cache->class_index(f.size());
  auto it = idx.find(f);
  if (it == idx.end()) throw NotCanonical(to_string(f));
  return before + it->second;
}

Formula enumerator_normal_form(const Formula& f, EnumOptions opts) {
  if (f.is(Formula::Kind::Verum) || f.is(Formula::Kind::Falsum)) return f;
  std::map<std::uint32_t, std::uint32_t> env;
  return renumber(f, opts.parameters, 0, env);
}

}  // namespace nact
