#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lmu/term.hpp"
#include "lmu/type.hpp"

namespace lmu {

// Flat prefix encoding of terms with de Bruijn indices. One 16-bit word per
// node: a 3-bit tag and a 13-bit payload. Annotations are inlined as type
// words right after their binder word.
namespace code {

using Word = char16_t;
using Code = std::u16string;
using View = std::u16string_view;

enum class Tag : std::uint8_t { Var = 0, Free = 1, Lam = 2, Mu = 3, App = 4, Bot = 5, Arrow = 6 };

inline constexpr unsigned kTagShift = 13;
inline constexpr unsigned kMaxPayload = (1u << kTagShift) - 1;
inline constexpr unsigned kAnnotated = 1;

inline constexpr Word make(Tag t, unsigned payload = 0) {
  return static_cast<Word>((static_cast<unsigned>(t) << kTagShift) | payload);
}
inline constexpr Tag tag(Word w) { return static_cast<Tag>(static_cast<unsigned>(w) >> kTagShift); }
inline constexpr unsigned payload(Word w) { return static_cast<unsigned>(w) & kMaxPayload; }
inline constexpr bool is_binder(Word w) { return tag(w) == Tag::Lam || tag(w) == Tag::Mu; }
inline constexpr bool is_annotated(Word w) { return (payload(w) & kAnnotated) != 0; }

inline Word checked(Tag t, std::size_t payload) {
  if (payload > kMaxPayload) throw std::length_error("lmu: term too deep for canonical encoding");
  return make(t, static_cast<unsigned>(payload));
}

/// Position just past the term or type item starting at `pos`.
inline std::size_t skip(View c, std::size_t pos) {
  std::size_t need = 1;
  while (need != 0) {
    const Word w = c[pos++];
    switch (tag(w)) {
      case Tag::Var:
      case Tag::Free:
      case Tag::Bot: --need; break;
      case Tag::App:
      case Tag::Arrow: ++need; break;
      case Tag::Lam:
      case Tag::Mu:
        if (is_annotated(w)) ++need;
        break;
    }
  }
  return pos;
}

/// Start of the body of the binder at `pos`.
inline std::size_t binder_body(View c, std::size_t pos) {
  return is_annotated(c[pos]) ? skip(c, pos + 1) : pos + 1;
}

inline void append_type(Code& out, const Type& t) {
  if (t.is_bot()) {
    out.push_back(make(Tag::Bot));
    return;
  }
  out.push_back(make(Tag::Arrow));
  append_type(out, t.domain());
  append_type(out, t.codomain());
}

inline Type read_type(View c, std::size_t& pos) {
  const Word w = c[pos++];
  if (tag(w) == Tag::Bot) return Type::bot();
  Type d = read_type(c, pos);
  Type r = read_type(c, pos);
  return Type::arrow(std::move(d), std::move(r));
}

inline bool has_redex(View c) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (tag(c[i]) == Tag::App && is_binder(c[i + 1])) return true;
  }
  return false;
}

/// Number of term nodes (type words excluded).
inline std::size_t node_count(View c) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    switch (tag(c[i])) {
      case Tag::Var:
      case Tag::Free:
      case Tag::App: ++n; break;
      case Tag::Lam:
      case Tag::Mu:
        ++n;
        if (is_annotated(c[i])) i = skip(c, i + 1) - 1;
        break;
      default: break;
    }
  }
  return n;
}

}  // namespace code

/// Alpha-quotient key of a term. Bound variables are de Bruijn indices; free
/// variables are numbered by first occurrence and named in `free_names`.
struct CanonicalTerm {
  code::Code code;
  std::vector<std::string> free_names;

  friend bool operator==(const CanonicalTerm&, const CanonicalTerm&) = default;
  friend std::strong_ordering operator<=>(const CanonicalTerm& a, const CanonicalTerm& b) {
    if (auto c = a.code.compare(b.code); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.free_names <=> b.free_names;
  }
};

struct CanonicalTermHash {
  std::size_t operator()(const CanonicalTerm& c) const {
    std::size_t h = std::hash<code::Code>{}(c.code);
    for (const auto& n : c.free_names) h = h * 1000003u ^ std::hash<std::string>{}(n);
    return h;
  }
};

namespace detail {
inline void encode(const Term& m, std::vector<std::string>& scope, CanonicalTerm& out) {
  using namespace code;
  switch (m.kind()) {
    case TermKind::Var: {
      for (std::size_t i = scope.size(); i-- > 0;) {
        if (scope[i] == m.name()) {
          out.code.push_back(checked(Tag::Var, scope.size() - 1 - i));
          return;
        }
      }
      std::size_t idx = 0;
      while (idx < out.free_names.size() && out.free_names[idx] != m.name()) ++idx;
      if (idx == out.free_names.size()) out.free_names.push_back(m.name());
      out.code.push_back(checked(Tag::Free, idx));
      return;
    }
    case TermKind::Lam:
    case TermKind::Mu: {
      const Tag t = m.is_lam() ? Tag::Lam : Tag::Mu;
      out.code.push_back(make(t, m.annotation() ? kAnnotated : 0));
      if (m.annotation()) append_type(out.code, *m.annotation());
      scope.push_back(m.name());
      encode(m.body(), scope, out);
      scope.pop_back();
      return;
    }
    case TermKind::App:
      out.code.push_back(make(Tag::App));
      encode(m.fun(), scope, out);
      encode(m.arg(), scope, out);
      return;
  }
}

// `names[d]` caches the binder name used at depth d.
inline Term decode(code::View c, std::size_t& pos, std::vector<std::string>& scope,
                   const std::vector<std::string>& free_names, const NameSet& avoid, std::vector<std::string>& names) {
  using namespace code;
  const Word w = c[pos++];
  switch (tag(w)) {
    case Tag::Var: return Term::var(scope.at(scope.size() - 1 - payload(w)));
    case Tag::Free: return Term::var(free_names.at(payload(w)));
    case Tag::Lam:
    case Tag::Mu: {
      std::optional<Type> annot;
      if (is_annotated(w)) annot = read_type(c, pos);
      if (names.size() == scope.size()) names.push_back(fresh_name("x" + std::to_string(scope.size()), avoid));
      scope.push_back(names[scope.size()]);
      Term body = decode(c, pos, scope, free_names, avoid, names);
      std::string name = std::move(scope.back());
      scope.pop_back();
      return Term::binder(tag(w) == Tag::Lam ? TermKind::Lam : TermKind::Mu, std::move(name), std::move(annot),
                          std::move(body));
    }
    case Tag::App: {
      Term f = decode(c, pos, scope, free_names, avoid, names);
      Term a = decode(c, pos, scope, free_names, avoid, names);
      return Term::app(std::move(f), std::move(a));
    }
    default: throw std::invalid_argument("lmu: malformed canonical code");
  }
}
}  // namespace detail

inline CanonicalTerm canonicalize(const Term& m) {
  CanonicalTerm out;
  std::vector<std::string> scope;
  detail::encode(m, scope, out);
  return out;
}

inline bool alpha_eq(const Term& a, const Term& b) { return canonicalize(a) == canonicalize(b); }

/// A named representative of a canonical term. The binder at depth d is named
/// `x<d>`, primed when that would clash with a free name or with `avoid`.
inline Term decode(const CanonicalTerm& c, NameSet avoid = {}) {
  avoid.insert(c.free_names.begin(), c.free_names.end());
  std::vector<std::string> scope;
  std::vector<std::string> names;
  std::size_t pos = 0;
  return detail::decode(c.code, pos, scope, c.free_names, avoid, names);
}

/// Renumbers free indices by first occurrence, dropping names that no longer
/// occur. `names` is the table the indices of `c` refer to.
inline CanonicalTerm normalize_free(code::View c, const std::vector<std::string>& names) {
  using namespace code;
  CanonicalTerm out;
  out.code.reserve(c.size());
  std::vector<int> remap(names.size(), -1);
  for (const Word w : c) {
    // Type words never carry the Free tag, so a flat scan is safe.
    if (tag(w) == Tag::Free) {
      int& r = remap.at(payload(w));
      if (r < 0) {
        r = static_cast<int>(out.free_names.size());
        out.free_names.push_back(names[payload(w)]);
      }
      out.code.push_back(make(Tag::Free, static_cast<unsigned>(r)));
    } else {
      out.code.push_back(w);
    }
  }
  return out;
}

/// Inverse of normalize_free: the code of `c` with free indices referring to
/// positions in `names`. Throws out_of_range for a name missing from `names`.
inline code::Code relabel_free(const CanonicalTerm& c, const std::vector<std::string>& names) {
  using namespace code;
  std::vector<unsigned> to(c.free_names.size());
  for (std::size_t i = 0; i < to.size(); ++i) {
    auto it = std::find(names.begin(), names.end(), c.free_names[i]);
    if (it == names.end()) throw std::out_of_range("lmu: free variable '" + c.free_names[i] + "' not in the table");
    to[i] = static_cast<unsigned>(it - names.begin());
  }
  Code out = c.code;
  for (Word& w : out) {
    if (tag(w) == Tag::Free) w = checked(Tag::Free, to[payload(w)]);
  }
  return out;
}

}  // namespace lmu
