#pragma once

// Typed term inventories: exhaustive enumeration by size and goal-directed
// random sampling.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lmu/canonical.hpp"
#include "lmu/rewrite.hpp"
#include "lmu/term.hpp"
#include "lmu/type.hpp"
#include "lmu/typing.hpp"

namespace lmu {

/// A judgement G |- term : type.
struct TypedInstance {
  Context context;
  Term term;
  Type type;
};

/// All types with at most `max_lgt` connectives, by lgt then structurally.
inline std::vector<Type> enumerate_types(std::size_t max_lgt) {
  std::vector<std::vector<Type>> by_lgt{{Type::bot()}};
  for (std::size_t n = 1; n <= max_lgt; ++n) {
    std::vector<Type> level;
    for (std::size_t left = 0; left < n; ++left) {
      for (const Type& d : by_lgt[left]) {
        for (const Type& r : by_lgt[n - 1 - left]) level.push_back(Type::arrow(d, r));
      }
    }
    std::sort(level.begin(), level.end());
    by_lgt.push_back(std::move(level));
  }
  std::vector<Type> out;
  for (auto& level : by_lgt) out.insert(out.end(), level.begin(), level.end());
  return out;
}

/// Non-owning reference to a callable.
template <class... Args>
class FunctionRef {
 public:
  template <class F>
  FunctionRef(F& f)  // NOLINT(google-explicit-constructor)
      : obj_(&f), call_([](void* o, Args... args) { (*static_cast<F*>(o))(args...); }) {}
  void operator()(Args... args) const { call_(obj_, args...); }

 private:
  void* obj_;
  void (*call_)(void*, Args...);
};
using Callback = FunctionRef<>;

/// Exhaustive enumeration of annotated terms by size (cxty), directly as
/// canonical codes. Free variables of the context are Free words numbered in
/// the context's key order; binder annotations range over `annotations`.
///
/// Each term is produced once: distinct codes are distinct alpha-classes.
class TypedEnumerator {
 public:
  using Id = code::TypeTable::Id;

  TypedEnumerator(code::TypeTable& types, const Context& g, const std::vector<Type>& annotations) : types_(types) {
    for (const auto& [name, type] : g) {
      free_names_.push_back(name);
      free_types_.push_back(types_.intern(type));
    }
    for (const Type& a : annotations) annotations_.push_back(types_.intern(a));
    root_ = context_for({});
  }

  const std::vector<std::string>& free_names() const { return free_names_; }
  const std::vector<Id>& free_types() const { return free_types_; }

  /// Number of terms of exactly `size` nodes and type `t`.
  std::uint64_t count(std::size_t size, Id t) { return count_in(root_, size, t); }

  /// Types inhabited at exactly `size`, in structural order.
  std::vector<Id> types_at(std::size_t size) {
    std::vector<Id> out;
    for (const auto& [t, n] : counts(root_, size)) out.push_back(t);
    std::sort(out.begin(), out.end(), [this](Id a, Id b) { return types_.compare(a, b) < 0; });
    return out;
  }

  /// Calls `emit(code, type)` for every term of exactly `size` nodes, of any
  /// type. Types are synthesized on the way, so no per-type tables are built
  /// at this size.
  template <class F>
  void for_each_any(std::size_t size, F&& emit) {
    buffer_.clear();
    auto leaf = [&](Id t) { emit(static_cast<const code::Code&>(buffer_), t); };
    synthesize(root_, nullptr, size, FunctionRef<Id>(leaf));
  }

  /// Calls `emit(code)` for every term of exactly `size` nodes and type `t`.
  template <class F>
  void for_each(std::size_t size, Id t, F&& emit) {
    buffer_.clear();
    if (count_in(root_, size, t) == 0) return;
    auto leaf = [&] { emit(static_cast<const code::Code&>(buffer_)); };
    generate(root_, nullptr, size, t, Callback(leaf));
  }

 private:
  // Bound variables in scope, innermost first. Continuations capture the
  // scope of their own position, not of the leaf that resumes them.
  struct Scope {
    Id type;
    const Scope* outer;
  };

  struct Ctx {
    std::vector<Id> bound;  // sorted multiset of bound-variable types
    std::map<Id, Ctx*> children;
    // A deque, so that growing it keeps references to computed rows valid.
    std::deque<std::optional<std::vector<std::pair<Id, std::uint64_t>>>> counts;
    std::unordered_map<std::uint64_t, std::uint64_t> large;  // (size, type) -> count, above kTableSize
  };

  // Sizes up to this get complete per-context tables; larger sizes are
  // counted per requested type.
  static constexpr std::size_t kTableSize = 8;

  Ctx* context_for(std::vector<Id> bound) {
    auto& slot = contexts_[bound];
    if (!slot) {
      slot = std::make_unique<Ctx>();
      slot->bound = std::move(bound);
    }
    return slot.get();
  }

  Ctx* extend(Ctx* c, Id t) {
    auto it = c->children.find(t);
    if (it != c->children.end()) return it->second;
    std::vector<Id> bound = c->bound;
    bound.insert(std::upper_bound(bound.begin(), bound.end(), t), t);
    Ctx* child = context_for(std::move(bound));
    c->children.emplace(t, child);
    return child;
  }

  const std::vector<std::pair<Id, std::uint64_t>>& counts(Ctx* c, std::size_t size) {
    if (c->counts.size() <= size) c->counts.resize(size + 1);
    if (c->counts[size]) return *c->counts[size];
    std::map<Id, std::uint64_t> acc;
    if (size == 1) {
      for (Id t : c->bound) ++acc[t];
      for (Id t : free_types_) ++acc[t];
    } else if (size > 1) {
      for (Id a : annotations_) {
        for (const auto& [t, n] : counts(extend(c, a), size - 1)) acc[types_.arrow(a, t)] += n;
        if (auto n = count_in(extend(c, types_.arrow(a, code::TypeTable::kBot)), size - 1, code::TypeTable::kBot)) {
          acc[a] += n;
        }
      }
      for (std::size_t k = 1; k + 1 < size; ++k) {
        const auto& args = counts(c, size - 1 - k);
        for (const auto& [f, n] : counts(c, k)) {
          if (!types_.is_arrow(f)) continue;
          if (auto m = lookup(args, types_.domain(f))) acc[types_.codomain(f)] += n * m;
        }
      }
    }
    c->counts[size].emplace(acc.begin(), acc.end());
    return *c->counts[size];
  }

  static std::uint64_t lookup(const std::vector<std::pair<Id, std::uint64_t>>& v, Id t) {
    auto it = std::lower_bound(v.begin(), v.end(), t, [](const auto& p, Id x) { return p.first < x; });
    return it != v.end() && it->first == t ? it->second : 0;
  }

  std::uint64_t count_in(Ctx* c, std::size_t size, Id t) {
    if (size <= kTableSize || (size < c->counts.size() && c->counts[size])) return lookup(counts(c, size), t);
    const std::uint64_t key = (static_cast<std::uint64_t>(size) << 32) | t;
    if (auto it = c->large.find(key); it != c->large.end()) return it->second;
    std::uint64_t n = 0;
    if (types_.is_arrow(t) && std::find(annotations_.begin(), annotations_.end(), types_.domain(t)) != annotations_.end()) {
      n += count_in(extend(c, types_.domain(t)), size - 1, types_.codomain(t));
    }
    if (std::find(annotations_.begin(), annotations_.end(), t) != annotations_.end()) {
      n += count_in(extend(c, types_.arrow(t, code::TypeTable::kBot)), size - 1, code::TypeTable::kBot);
    }
    for (std::size_t k = 1; k + 1 < size; ++k) {
      for (const auto& [f, m] : counts(c, k)) {
        if (types_.is_arrow(f) && types_.codomain(f) == t) n += m * count_in(c, size - 1 - k, types_.domain(f));
      }
    }
    c->large.emplace(key, n);
    return n;
  }

  void synthesize(Ctx* c, const Scope* scope, std::size_t size, FunctionRef<Id> emit) {
    using namespace code;
    if (size == 1) {
      std::size_t j = 0;
      for (const Scope* s = scope; s; s = s->outer, ++j) {
        buffer_.push_back(checked(Tag::Var, j));
        emit(s->type);
        buffer_.pop_back();
      }
      for (std::size_t i = 0; i < free_types_.size(); ++i) {
        buffer_.push_back(checked(Tag::Free, i));
        emit(free_types_[i]);
        buffer_.pop_back();
      }
      return;
    }
    const std::size_t mark = buffer_.size();
    for (Id a : annotations_) {
      buffer_.push_back(make(Tag::Lam, kAnnotated));
      types_.append(buffer_, a);
      const Scope bound{a, scope};
      auto wrap = [&, a](Id r) { emit(types_.arrow(a, r)); };
      synthesize(extend(c, a), &bound, size - 1, FunctionRef<Id>(wrap));
      buffer_.resize(mark);
    }
    for (Id a : annotations_) {
      const Id neg = types_.arrow(a, TypeTable::kBot);
      Ctx* inner = extend(c, neg);
      if (count_in(inner, size - 1, TypeTable::kBot) == 0) continue;
      buffer_.push_back(make(Tag::Mu, kAnnotated));
      types_.append(buffer_, a);
      const Scope bound{neg, scope};
      auto done = [&, a] { emit(a); };
      generate(inner, &bound, size - 1, TypeTable::kBot, Callback(done));
      buffer_.resize(mark);
    }
    for (std::size_t k = 1; k + 1 < size; ++k) {
      buffer_.push_back(make(Tag::App));
      auto then_arg = [&, k](Id f) {
        if (!types_.is_arrow(f)) return;
        const Id d = types_.domain(f);
        if (count_in(c, size - 1 - k, d) == 0) return;
        const Id r = types_.codomain(f);
        auto done = [&, r] { emit(r); };
        generate(c, scope, size - 1 - k, d, Callback(done));
      };
      synthesize(c, scope, k, FunctionRef<Id>(then_arg));
      buffer_.resize(mark);
    }
  }

  void generate(Ctx* c, const Scope* scope, std::size_t size, Id t, Callback emit) {
    using namespace code;
    if (size == 1) {
      std::size_t j = 0;
      for (const Scope* s = scope; s; s = s->outer, ++j) {
        if (s->type == t) {
          buffer_.push_back(checked(Tag::Var, j));
          emit();
          buffer_.pop_back();
        }
      }
      for (std::size_t i = 0; i < free_types_.size(); ++i) {
        if (free_types_[i] == t) {
          buffer_.push_back(checked(Tag::Free, i));
          emit();
          buffer_.pop_back();
        }
      }
      return;
    }
    const std::size_t mark = buffer_.size();
    if (types_.is_arrow(t)) {
      const Id a = types_.domain(t);
      if (std::find(annotations_.begin(), annotations_.end(), a) != annotations_.end()) {
        Ctx* inner = extend(c, a);
        if (count_in(inner, size - 1, types_.codomain(t)) != 0) {
          buffer_.push_back(make(Tag::Lam, kAnnotated));
          types_.append(buffer_, a);
          const Scope bound{a, scope};
          generate(inner, &bound, size - 1, types_.codomain(t), emit);
          buffer_.resize(mark);
        }
      }
    }
    if (std::find(annotations_.begin(), annotations_.end(), t) != annotations_.end()) {
      const Id neg = types_.arrow(t, TypeTable::kBot);
      Ctx* inner = extend(c, neg);
      if (count_in(inner, size - 1, TypeTable::kBot) != 0) {
        buffer_.push_back(make(Tag::Mu, kAnnotated));
        types_.append(buffer_, t);
        const Scope bound{neg, scope};
        generate(inner, &bound, size - 1, TypeTable::kBot, emit);
        buffer_.resize(mark);
      }
    }
    for (std::size_t k = 1; k + 1 < size; ++k) {
      for (const auto& [f, n] : counts(c, k)) {
        if (!types_.is_arrow(f) || types_.codomain(f) != t) continue;
        const Id a = types_.domain(f);
        if (count_in(c, size - 1 - k, a) == 0) continue;
        buffer_.push_back(make(Tag::App));
        auto then_arg = [&, a, k] { generate(c, scope, size - 1 - k, a, emit); };
        generate(c, scope, k, f, Callback(then_arg));
        buffer_.resize(mark);
      }
    }
  }

  code::TypeTable& types_;
  std::vector<std::string> free_names_;
  std::vector<Id> free_types_;
  std::vector<Id> annotations_;
  std::map<std::vector<Id>, std::unique_ptr<Ctx>> contexts_;
  Ctx* root_ = nullptr;
  code::Code buffer_;
};

/// Every term M with G |- M : A, cxty(M) <= max_cxty and annotations drawn
/// from `enumerate_types(annotation_lgt)`, once per alpha-class, by size.
inline std::vector<TypedInstance> enumerate_typed_terms(const Context& g, const Type& a, std::size_t max_cxty,
                                                        std::size_t annotation_lgt = 2) {
  code::TypeTable types;
  TypedEnumerator en(types, g, enumerate_types(annotation_lgt));
  const auto target = types.intern(a);
  std::vector<TypedInstance> out;
  for (std::size_t size = 1; size <= max_cxty; ++size) {
    en.for_each(size, target, [&](const code::Code& c) {
      out.push_back({g, decode(normalize_free(c, en.free_names())), a});
    });
  }
  return out;
}

namespace detail {

class TypedSampler {
 public:
  TypedSampler(std::uint64_t seed, std::vector<Type> pool, std::size_t max_calls)
      : rng_(seed), pool_(std::move(pool)), max_calls_(max_calls) {}

  std::optional<Term> sample(const Context& g, const Type& a, std::size_t budget) {
    NameSet taken;
    for (const auto& [name, t] : g) taken.insert(name);
    scope_.assign(g.begin(), g.end());
    return go(a, budget, taken);
  }

 private:
  enum Rule { kVar, kLam, kMu, kApp };

  std::optional<Term> go(const Type& a, std::size_t budget, NameSet& taken) {
    if (budget == 0 || ++calls_ > max_calls_) return std::nullopt;
    std::vector<Rule> rules;
    std::vector<double> weights;
    auto offer = [&](Rule r, double w) {
      rules.push_back(r);
      weights.push_back(w);
    };
    if (!vars_of(a).empty()) offer(kVar, budget <= 2 ? 4.0 : 1.0);
    if (budget >= 2 && a.is_arrow()) offer(kLam, 3.0);
    if (budget >= 2) offer(kMu, 1.5);
    if (budget >= 3) offer(kApp, 3.0);
    while (!rules.empty()) {
      std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
      const std::size_t i = pick(rng_);
      const Rule r = rules[i];
      rules.erase(rules.begin() + static_cast<std::ptrdiff_t>(i));
      weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(i));
      if (auto t = apply(r, a, budget, taken)) return t;
    }
    return std::nullopt;
  }

  std::vector<std::string> vars_of(const Type& a) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < scope_.size(); ++i) {
      bool shadowed = false;
      for (std::size_t j = i + 1; j < scope_.size(); ++j) shadowed = shadowed || scope_[j].first == scope_[i].first;
      if (!shadowed && scope_[i].second == a) out.push_back(scope_[i].first);
    }
    return out;
  }

  std::optional<Term> bind(TermKind kind, const Type& var_type, const Type& annot, const Type& body_type,
                           std::size_t budget, NameSet& taken) {
    const std::string x = fresh_name("x" + std::to_string(taken.size()), taken);
    taken.insert(x);
    scope_.emplace_back(x, var_type);
    auto body = go(body_type, budget - 1, taken);
    scope_.pop_back();
    taken.erase(x);
    if (!body) return std::nullopt;
    return Term::binder(kind, x, annot, std::move(*body));
  }

  std::optional<Term> apply(Rule r, const Type& a, std::size_t budget, NameSet& taken) {
    switch (r) {
      case kVar: {
        auto vs = vars_of(a);
        return Term::var(vs[std::uniform_int_distribution<std::size_t>(0, vs.size() - 1)(rng_)]);
      }
      case kLam: return bind(TermKind::Lam, a.domain(), a.domain(), a.codomain(), budget, taken);
      case kMu: return bind(TermKind::Mu, negation(a), a, Type::bot(), budget, taken);
      case kApp: {
        std::vector<Type> candidates = pool_;
        for (const auto& [name, t] : scope_) {
          for (Type u = t; u.is_arrow(); u = u.codomain()) candidates.push_back(u.domain());
        }
        for (int attempt = 0; attempt < 2; ++attempt) {
          const Type b = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng_)];
          const std::size_t k = std::uniform_int_distribution<std::size_t>(1, budget - 2)(rng_);
          auto f = go(Type::arrow(b, a), k, taken);
          if (!f) continue;
          auto x = go(b, budget - 1 - cxty(*f), taken);
          if (x) return Term::app(std::move(*f), std::move(*x));
        }
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  std::mt19937_64 rng_;
  std::vector<Type> pool_;
  std::size_t max_calls_;
  std::size_t calls_ = 0;
  std::vector<std::pair<std::string, Type>> scope_;
};

}  // namespace detail

/// Goal-directed random term of type `a` with at most `size_budget` nodes:
/// pick a rule whose conclusion matches, recurse on its premises. Argument
/// types of applications come from `enumerate_types(2)` and the context.
/// Deterministic per seed; nullopt when the budget cannot be met.
inline std::optional<TypedInstance> random_typed_term(const Context& g, const Type& a, std::size_t size_budget,
                                                      std::uint64_t seed) {
  detail::TypedSampler sampler(seed, enumerate_types(2), 20000);
  auto t = sampler.sample(g, a, size_budget);
  if (!t) return std::nullopt;
  return TypedInstance{g, std::move(*t), a};
}

/// Random unannotated term with exactly `size` nodes over the given free
/// names (which may be empty only if binders can supply variables).
inline Term random_term(const std::vector<std::string>& free, std::size_t size, std::mt19937_64& rng) {
  std::vector<std::string> scope;
  auto go = [&](auto& self, std::size_t n) -> Term {
    const bool can_leaf = !(scope.empty() && free.empty());
    if (n == 1 && can_leaf) {
      const std::size_t total = scope.size() + free.size();
      const std::size_t i = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng);
      return Term::var(i < scope.size() ? scope[i] : free[i - scope.size()]);
    }
    const bool binder = n == 2 || !can_leaf || std::bernoulli_distribution(0.4)(rng);
    if (binder || n < 3) {
      const std::string x = "x" + std::to_string(scope.size());
      scope.push_back(x);
      Term body = self(self, n - 1);
      scope.pop_back();
      return std::bernoulli_distribution(0.5)(rng) ? Term::lam(x, std::move(body)) : Term::mu(x, std::move(body));
    }
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n - 2)(rng);
    Term f = self(self, k);
    Term a = self(self, n - 1 - k);
    return Term::app(std::move(f), std::move(a));
  };
  return go(go, std::max<std::size_t>(size, scope.empty() && free.empty() ? 2 : 1));
}

}  // namespace lmu
