#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "lmu/type.hpp"

namespace lmu {

enum class TermKind { Var, Lam, Mu, App };

/// One step from a node to a child; a list of steps addresses a subterm.
enum class PathStep { LamBody, MuBody, AppFun, AppArg };

/// An immutable, structurally shared lambda-mu term with named variables.
///
/// Binders may carry an optional annotation. For `Lam` it is the type of the
/// bound variable; for `Mu` it is the result type `A` of the term, the bound
/// variable itself standing for `A -> bot`.
class Term {
 public:
  static Term var(std::string name) {
    return Term(std::make_shared<const Node>(Node{TermKind::Var, std::move(name), std::nullopt, {}, {}}));
  }
  static Term lam(std::string binder, std::optional<Type> annot, Term body) {
    return binder_node(TermKind::Lam, std::move(binder), std::move(annot), std::move(body));
  }
  static Term lam(std::string binder, Term body) { return lam(std::move(binder), std::nullopt, std::move(body)); }
  static Term mu(std::string binder, std::optional<Type> annot, Term body) {
    return binder_node(TermKind::Mu, std::move(binder), std::move(annot), std::move(body));
  }
  static Term mu(std::string binder, Term body) { return mu(std::move(binder), std::nullopt, std::move(body)); }
  static Term binder(TermKind kind, std::string binder, std::optional<Type> annot, Term body) {
    return binder_node(kind, std::move(binder), std::move(annot), std::move(body));
  }
  static Term app(Term fun, Term arg) {
    return Term(std::make_shared<const Node>(Node{TermKind::App, {}, std::nullopt, std::move(fun.node_), std::move(arg.node_)}));
  }
  /// Left-nested application `(f a1 ... an)`.
  static Term app(Term fun, std::initializer_list<Term> args) {
    for (const Term& a : args) fun = app(std::move(fun), a);
    return fun;
  }

  TermKind kind() const { return node_->kind; }
  bool is_var() const { return kind() == TermKind::Var; }
  bool is_lam() const { return kind() == TermKind::Lam; }
  bool is_mu() const { return kind() == TermKind::Mu; }
  bool is_app() const { return kind() == TermKind::App; }
  bool is_binder() const { return is_lam() || is_mu(); }
  /// `fun` of an application whose function part is an abstraction.
  bool is_redex() const { return is_app() && fun().is_binder(); }

  /// Variable name, or binder name for Lam/Mu.
  const std::string& name() const { return node_->name; }
  const std::optional<Type>& annotation() const { return node_->annot; }
  Term body() const { return Term(node_->left); }
  Term fun() const { return Term(node_->left); }
  Term arg() const { return Term(node_->right); }

  /// True when both handles point at the same node.
  bool same_node(const Term& other) const { return node_ == other.node_; }

  /// Syntactic equality: binder names and annotations must match.
  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.name() != b.name() || a.annotation() != b.annotation()) return false;
    switch (a.kind()) {
      case TermKind::Var: return true;
      case TermKind::Lam:
      case TermKind::Mu: return a.body() == b.body();
      case TermKind::App: return a.fun() == b.fun() && a.arg() == b.arg();
    }
    return false;
  }

 private:
  struct Node {
    TermKind kind;
    std::string name;
    std::optional<Type> annot;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Term binder_node(TermKind kind, std::string binder, std::optional<Type> annot, Term body) {
    return Term(std::make_shared<const Node>(Node{kind, std::move(binder), std::move(annot), std::move(body.node_), {}}));
  }

  std::shared_ptr<const Node> node_;
};

using NameSet = std::set<std::string>;

/// Parallel substitution: all bindings are applied simultaneously.
using Substitution = std::map<std::string, Term>;

namespace detail {
inline void collect_free(const Term& m, std::set<std::string>& bound, NameSet& out) {
  switch (m.kind()) {
    case TermKind::Var:
      if (!bound.contains(m.name())) out.insert(m.name());
      return;
    case TermKind::Lam:
    case TermKind::Mu: {
      bool fresh = bound.insert(m.name()).second;
      collect_free(m.body(), bound, out);
      if (fresh) bound.erase(m.name());
      return;
    }
    case TermKind::App:
      collect_free(m.fun(), bound, out);
      collect_free(m.arg(), bound, out);
      return;
  }
}
}  // namespace detail

inline NameSet free_vars(const Term& m) {
  NameSet out;
  std::set<std::string> bound;
  detail::collect_free(m, bound, out);
  return out;
}

inline bool occurs_free(const Term& m, std::string_view x) {
  switch (m.kind()) {
    case TermKind::Var: return m.name() == x;
    case TermKind::Lam:
    case TermKind::Mu: return m.name() != x && occurs_free(m.body(), x);
    case TermKind::App: return occurs_free(m.fun(), x) || occurs_free(m.arg(), x);
  }
  return false;
}

/// Number of free occurrences of `x` in `m`.
inline std::size_t free_occurrences(const Term& m, std::string_view x) {
  switch (m.kind()) {
    case TermKind::Var: return m.name() == x ? 1 : 0;
    case TermKind::Lam:
    case TermKind::Mu: return m.name() == x ? 0 : free_occurrences(m.body(), x);
    case TermKind::App: return free_occurrences(m.fun(), x) + free_occurrences(m.arg(), x);
  }
  return 0;
}

/// Size of a term: one per Var, Lam, Mu and App node. Annotations are free.
inline std::size_t cxty(const Term& m) {
  switch (m.kind()) {
    case TermKind::Var: return 1;
    case TermKind::Lam:
    case TermKind::Mu: return 1 + cxty(m.body());
    case TermKind::App: return 1 + cxty(m.fun()) + cxty(m.arg());
  }
  return 0;
}

/// `base` with trailing primes stripped, then the fewest primes appended so
/// the result is not in `avoid`: x, x', x'', ...
inline std::string fresh_name(std::string_view base, const NameSet& avoid) {
  while (!base.empty() && base.back() == '\'') base.remove_suffix(1);
  std::string candidate(base);
  while (avoid.contains(candidate)) candidate += '\'';
  return candidate;
}

/// Capture-avoiding simultaneous substitution M[s]. Binders are renamed only
/// when a substituted term would otherwise be captured.
inline Term substitute_parallel(const Term& m, const Substitution& s) {
  if (s.empty()) return m;
  switch (m.kind()) {
    case TermKind::Var: {
      auto it = s.find(m.name());
      return it == s.end() ? m : it->second;
    }
    case TermKind::App: {
      Term f = substitute_parallel(m.fun(), s);
      Term a = substitute_parallel(m.arg(), s);
      if (f.same_node(m.fun()) && a.same_node(m.arg())) return m;
      return Term::app(std::move(f), std::move(a));
    }
    case TermKind::Lam:
    case TermKind::Mu: {
      const Term body = m.body();
      const NameSet body_fv = free_vars(body);
      Substitution inner;
      for (const auto& [x, n] : s) {
        if (x != m.name() && body_fv.contains(x)) inner.emplace(x, n);
      }
      if (inner.empty()) return m;

      bool capture = false;
      NameSet avoid = body_fv;
      for (const auto& [x, n] : inner) {
        NameSet fv = free_vars(n);
        capture = capture || fv.contains(m.name());
        avoid.insert(fv.begin(), fv.end());
      }
      std::string binder = m.name();
      if (capture) {
        binder = fresh_name(m.name(), avoid);
        inner.insert_or_assign(m.name(), Term::var(binder));
      }
      return Term::binder(m.kind(), std::move(binder), m.annotation(), substitute_parallel(body, inner));
    }
  }
  return m;
}

/// Capture-avoiding M[x:=N].
inline Term substitute(const Term& m, const std::string& x, const Term& n) {
  return substitute_parallel(m, Substitution{{x, n}});
}

}  // namespace lmu
