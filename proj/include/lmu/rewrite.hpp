#pragma once

// Reduction, head analysis and type checking directly on canonical codes.
// This is the engine behind graph exploration; the named-term operations in
// reduction.hpp and typing.hpp are the reference it is tested against.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lmu/canonical.hpp"
#include "lmu/type.hpp"

namespace lmu::code {

namespace detail {

// Copies the term at `pos`, handing every bound-variable word whose index
// escapes the copied term to `on_var(index - depth, depth, out)`.
template <class OnVar>
void copy_term(View c, std::size_t& pos, unsigned depth, Code& out, OnVar&& on_var) {
  const Word w = c[pos++];
  switch (tag(w)) {
    case Tag::Var:
      if (payload(w) >= depth) {
        on_var(payload(w) - depth, depth, out);
      } else {
        out.push_back(w);
      }
      return;
    case Tag::Free: out.push_back(w); return;
    case Tag::Lam:
    case Tag::Mu: {
      out.push_back(w);
      if (is_annotated(w)) {
        const std::size_t end = skip(c, pos);
        out.append(c.substr(pos, end - pos));
        pos = end;
      }
      copy_term(c, pos, depth + 1, out, on_var);
      return;
    }
    case Tag::App:
      out.push_back(w);
      copy_term(c, pos, depth, out, on_var);
      copy_term(c, pos, depth, out, on_var);
      return;
    default: throw std::invalid_argument("lmu: malformed canonical code");
  }
}

// Appends the term at `pos` with escaping indices raised by `by`.
inline void append_shifted(View c, std::size_t pos, unsigned by, Code& out) {
  copy_term(c, pos, 0, out, [by](unsigned k, unsigned depth, Code& o) { o.push_back(checked(Tag::Var, k + depth + by)); });
}

}  // namespace detail

/// Positions of App words that head a redex, in prefix (leftmost-outermost) order.
inline std::vector<std::size_t> redex_sites(View c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (tag(c[i]) == Tag::App && is_binder(c[i + 1])) out.push_back(i);
  }
  return out;
}

/// Contracts the redex whose App word sits at `site`.
///
/// beta:  (\x.P) Q          -> P[x:=Q]
/// mu:    (mu x:A->B. P) Q  -> mu y:B. P[x := \z:A->B. y (z Q)]
inline Code contract_at(View c, std::size_t site) {
  const std::size_t head = site + 1;
  const Word hw = c[head];
  const std::size_t p_begin = binder_body(c, head);
  const std::size_t p_end = skip(c, p_begin);
  const std::size_t q_end = skip(c, p_end);
  const View q = c.substr(p_end, q_end - p_end);

  Code out;
  out.reserve(c.size() + 8);
  out.append(c.substr(0, site));
  std::size_t pos = p_begin;
  if (tag(hw) == Tag::Lam) {
    detail::copy_term(c, pos, 0, out, [q](unsigned k, unsigned depth, Code& o) {
      if (k == 0) {
        detail::append_shifted(q, 0, depth, o);
      } else {
        o.push_back(checked(Tag::Var, k - 1 + depth));
      }
    });
  } else {
    // Annotation of the fresh binders: y gets B and z gets A->B when the mu
    // binder is annotated with an arrow; otherwise both stay bare.
    View arrow;
    View result;
    if (is_annotated(hw) && tag(c[head + 1]) == Tag::Arrow) {
      arrow = c.substr(head + 1, p_begin - head - 1);
      const std::size_t dom_end = skip(c, head + 2);
      result = c.substr(dom_end, p_begin - dom_end);
    }
    out.push_back(make(Tag::Mu, result.empty() ? 0 : kAnnotated));
    out.append(result);
    detail::copy_term(c, pos, 0, out, [q, arrow](unsigned k, unsigned depth, Code& o) {
      if (k != 0) {
        o.push_back(checked(Tag::Var, k + depth));
        return;
      }
      o.push_back(make(Tag::Lam, arrow.empty() ? 0 : kAnnotated));
      o.append(arrow);
      o.push_back(make(Tag::App));
      o.push_back(checked(Tag::Var, depth + 1));
      o.push_back(make(Tag::App));
      o.push_back(make(Tag::Var, 0));
      detail::append_shifted(q, 0, depth + 2, o);
    });
  }
  out.append(c.substr(q_end));
  return out;
}

/// Lemma-2 style decomposition of a code: binder prefix, head, argument spine.
struct CodeHead {
  std::size_t prefix_binders = 0;
  std::size_t body = 0;  // first word after the binder prefix
  std::size_t apps = 0;  // length of the spine
  std::size_t head = 0;  // position of the head word
  bool redex() const { return apps > 0; }  // set only when the head is a binder
};

inline CodeHead head_of(View c) {
  CodeHead h;
  std::size_t pos = 0;
  while (is_binder(c[pos])) {
    ++h.prefix_binders;
    pos = binder_body(c, pos);
  }
  h.body = pos;
  while (tag(c[pos]) == Tag::App) ++pos;
  h.head = pos;
  h.apps = is_binder(c[pos]) ? pos - h.body : 0;
  return h;
}

/// Contraction of the head redex, if any.
inline std::optional<Code> hred(View c) {
  const CodeHead h = head_of(c);
  if (!h.redex()) return std::nullopt;
  return contract_at(c, h.head - 1);
}

/// The subterm at `pos` as a standalone code; bound variables that escape it
/// become Free words numbered from `first_free` (innermost binder first).
inline Code extract(View c, std::size_t pos, unsigned first_free) {
  Code out;
  detail::copy_term(c, pos, 0, out,
                    [first_free](unsigned k, unsigned, Code& o) { o.push_back(checked(Tag::Free, first_free + k)); });
  return out;
}

inline unsigned free_table_size(View c) {
  unsigned n = 0;
  for (const Word w : c) {
    if (tag(w) == Tag::Free) n = std::max(n, payload(w) + 1);
  }
  return n;
}

/// arg(M): the spine when the head is a variable; P, Q and the rest of the
/// spine when the head is a redex (\x.P) Q or (mu x.P) Q. Escaping bound
/// variables are renamed apart from the free variables of `c`.
inline std::vector<Code> head_args(View c) {
  const CodeHead h = head_of(c);
  const unsigned base = free_table_size(c);
  std::vector<Code> out;
  std::size_t pos = h.head;
  if (h.redex()) {
    out.push_back(extract(c, binder_body(c, pos), base));
  }
  pos = skip(c, pos);
  const std::size_t spine = h.redex() ? h.apps : h.head - h.body;
  for (std::size_t i = 0; i < spine; ++i) {
    out.push_back(extract(c, pos, base));
    pos = skip(c, pos);
  }
  return out;
}

/// Hash-consed types for the code engine: id 0 is bot.
class TypeTable {
 public:
  using Id = std::uint32_t;
  static constexpr Id kBot = 0;

  Id arrow(Id d, Id r) {
    const std::uint64_t key = (static_cast<std::uint64_t>(d) << 32) | r;
    auto [it, inserted] = index_.try_emplace(key, static_cast<Id>(nodes_.size() + 1));
    if (inserted) nodes_.emplace_back(d, r);
    return it->second;
  }
  bool is_arrow(Id t) const { return t != kBot; }
  Id domain(Id t) const { return nodes_[t - 1].first; }
  Id codomain(Id t) const { return nodes_[t - 1].second; }

  Id intern(const Type& t) {
    if (t.is_bot()) return kBot;
    const Id d = intern(t.domain());
    return arrow(d, intern(t.codomain()));
  }
  Type to_type(Id t) const {
    if (t == kBot) return Type::bot();
    return Type::arrow(to_type(domain(t)), to_type(codomain(t)));
  }
  Id read(View c, std::size_t& pos) {
    if (tag(c[pos++]) == Tag::Bot) return kBot;
    const Id d = read(c, pos);
    return arrow(d, read(c, pos));
  }
  void append(Code& out, Id t) const {
    if (t == kBot) {
      out.push_back(make(Tag::Bot));
      return;
    }
    out.push_back(make(Tag::Arrow));
    append(out, domain(t));
    append(out, codomain(t));
  }
  std::size_t lgt(Id t) const { return t == kBot ? 0 : 1 + lgt(domain(t)) + lgt(codomain(t)); }
  /// Same order as Type's operator<=>.
  int compare(Id a, Id b) const {
    if (a == b) return 0;
    if (a == kBot) return -1;
    if (b == kBot) return 1;
    if (int c = compare(domain(a), domain(b)); c != 0) return c;
    return compare(codomain(a), codomain(b));
  }

 private:
  std::vector<std::pair<Id, Id>> nodes_;
  std::unordered_map<std::uint64_t, Id> index_;
};

namespace detail {
inline std::optional<TypeTable::Id> infer(View c, std::size_t& pos, TypeTable& types, std::vector<TypeTable::Id>& scope,
                                          std::span<const std::optional<TypeTable::Id>> free_types) {
  using Id = TypeTable::Id;
  const Word w = c[pos++];
  switch (tag(w)) {
    case Tag::Var: return scope[scope.size() - 1 - payload(w)];
    case Tag::Free:
      if (payload(w) >= free_types.size()) return std::nullopt;
      return free_types[payload(w)];
    case Tag::Lam:
    case Tag::Mu: {
      if (!is_annotated(w)) return std::nullopt;
      const Id a = types.read(c, pos);
      const bool lam = tag(w) == Tag::Lam;
      scope.push_back(lam ? a : types.arrow(a, TypeTable::kBot));
      const auto body = infer(c, pos, types, scope, free_types);
      scope.pop_back();
      if (!body) return std::nullopt;
      if (lam) return types.arrow(a, *body);
      if (*body != TypeTable::kBot) return std::nullopt;
      return a;
    }
    case Tag::App: {
      const auto f = infer(c, pos, types, scope, free_types);
      if (!f) return std::nullopt;
      const auto x = infer(c, pos, types, scope, free_types);
      if (!x || !types.is_arrow(*f) || types.domain(*f) != *x) return std::nullopt;
      return types.codomain(*f);
    }
    default: return std::nullopt;
  }
}
}  // namespace detail

/// Church-style type of a code, or nullopt when it is ill-typed or has an
/// unannotated binder. `free_types[i]` types the free variable with index i.
inline std::optional<TypeTable::Id> infer(View c, TypeTable& types,
                                          std::span<const std::optional<TypeTable::Id>> free_types = {}) {
  std::vector<TypeTable::Id> scope;
  std::size_t pos = 0;
  return detail::infer(c, pos, types, scope, free_types);
}

}  // namespace lmu::code
