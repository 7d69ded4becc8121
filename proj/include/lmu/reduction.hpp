#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lmu/canonical.hpp"
#include "lmu/syntax.hpp"
#include "lmu/term.hpp"
#include "lmu/typing.hpp"

namespace lmu {

class NotARedex : public std::invalid_argument {
 public:
  NotARedex() : std::invalid_argument("not a redex: expected (\\x.P Q) or (mu x.P Q)") {}
};

class InvalidPosition : public std::invalid_argument {
 public:
  explicit InvalidPosition(const std::string& what) : std::invalid_argument("invalid redex position: " + what) {}
};

/// Path from the root to an App node whose function part is a Lam or Mu.
using RedexPosition = std::vector<PathStep>;

struct PrefixBinder {
  TermKind kind;  // Lam or Mu
  std::string name;
  std::optional<Type> annotation;
};

struct HeadVar {
  std::string name;
};
struct HeadRedex {
  Term redex;
};

/// M = prefix (head spine...), where head is a variable or a redex.
struct HeadForm {
  std::vector<PrefixBinder> prefix;
  std::variant<HeadVar, HeadRedex> head;
  std::vector<Term> spine;

  bool head_normal() const { return std::holds_alternative<HeadVar>(head); }
};

inline HeadForm head_form(const Term& m) {
  HeadForm h{{}, HeadVar{}, {}};
  Term cur = m;
  while (cur.is_binder()) {
    h.prefix.push_back({cur.kind(), cur.name(), cur.annotation()});
    cur = cur.body();
  }
  std::vector<Term> args;
  while (cur.is_app()) {
    args.push_back(cur.arg());
    cur = cur.fun();
  }
  if (cur.is_var()) {
    h.head = HeadVar{cur.name()};
    h.spine.assign(args.rbegin(), args.rend());
  } else {
    // A binder here always has at least one argument, else it would be part
    // of the prefix.
    h.head = HeadRedex{Term::app(cur, args.back())};
    h.spine.assign(args.rbegin() + 1, args.rend());
  }
  return h;
}

inline Term reassemble(const std::vector<PrefixBinder>& prefix, Term head, const std::vector<Term>& spine) {
  for (const Term& a : spine) head = Term::app(std::move(head), a);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    head = Term::binder(it->kind, it->name, it->annotation, std::move(head));
  }
  return head;
}

inline Term reassemble(const HeadForm& h) {
  Term head = std::holds_alternative<HeadVar>(h.head) ? Term::var(std::get<HeadVar>(h.head).name)
                                                      : std::get<HeadRedex>(h.head).redex;
  return reassemble(h.prefix, std::move(head), h.spine);
}

/// One cut-elimination step at the root of `r`.
///
///   (\x.P Q)      -> P[x:=Q]
///   (mu x.P Q)    -> mu y. P[x := \z.(y (z Q))]
///
/// y and z are fresh for P, Q and `avoid`. When the mu binder is annotated
/// with A->B, y gets B and z gets A->B; otherwise both are left bare.
inline Term contract_redex(const Term& r, const NameSet& avoid = {}) {
  if (!r.is_redex()) throw NotARedex();
  const Term head = r.fun();
  const Term q = r.arg();
  if (head.is_lam()) return substitute(head.body(), head.name(), q);

  const Term p = head.body();
  NameSet used = avoid;
  used.merge(free_vars(p));
  used.merge(free_vars(q));
  const std::string y = fresh_name("y", used);
  used.insert(y);
  const std::string z = fresh_name("z", used);

  std::optional<Type> y_annot;
  std::optional<Type> z_annot;
  if (head.annotation() && head.annotation()->is_arrow()) {
    y_annot = head.annotation()->codomain();
    z_annot = head.annotation();
  }
  const Term replacement = Term::lam(z, z_annot, Term::app(Term::var(y), Term::app(Term::var(z), q)));
  return Term::mu(y, y_annot, substitute(p, head.name(), replacement));
}

namespace detail {
inline void collect_redexes(const Term& m, RedexPosition& path, std::vector<RedexPosition>& out) {
  if (m.is_redex()) out.push_back(path);
  switch (m.kind()) {
    case TermKind::Var: return;
    case TermKind::Lam:
    case TermKind::Mu:
      path.push_back(m.is_lam() ? PathStep::LamBody : PathStep::MuBody);
      collect_redexes(m.body(), path, out);
      path.pop_back();
      return;
    case TermKind::App:
      path.push_back(PathStep::AppFun);
      collect_redexes(m.fun(), path, out);
      path.back() = PathStep::AppArg;
      collect_redexes(m.arg(), path, out);
      path.pop_back();
      return;
  }
}

inline Term reduce_at(const Term& m, std::span<const PathStep> path, NameSet& binders) {
  if (path.empty()) {
    if (!m.is_redex()) throw InvalidPosition("addressed subterm is not a redex");
    return contract_redex(m, binders);
  }
  const PathStep step = path.front();
  const auto rest = path.subspan(1);
  switch (step) {
    case PathStep::LamBody:
    case PathStep::MuBody: {
      if ((step == PathStep::LamBody && !m.is_lam()) || (step == PathStep::MuBody && !m.is_mu())) {
        throw InvalidPosition("path step '" + std::string(to_string(step)) + "' does not match the term");
      }
      const bool added = binders.insert(m.name()).second;
      Term body = reduce_at(m.body(), rest, binders);
      if (added) binders.erase(m.name());
      return Term::binder(m.kind(), m.name(), m.annotation(), std::move(body));
    }
    case PathStep::AppFun:
    case PathStep::AppArg:
      if (!m.is_app()) throw InvalidPosition("path step '" + std::string(to_string(step)) + "' does not match the term");
      if (step == PathStep::AppFun) return Term::app(reduce_at(m.fun(), rest, binders), m.arg());
      return Term::app(m.fun(), reduce_at(m.arg(), rest, binders));
  }
  throw InvalidPosition("unknown step");
}
}  // namespace detail

/// All redexes in leftmost-outermost order (pre-order, function before argument).
inline std::vector<RedexPosition> redex_positions(const Term& m) {
  std::vector<RedexPosition> out;
  RedexPosition path;
  detail::collect_redexes(m, path, out);
  return out;
}

/// M with the redex at `p` contracted. Fresh names also avoid the binders
/// crossed on the way down.
inline Term reduce_at(const Term& m, const RedexPosition& p) {
  NameSet binders;
  return detail::reduce_at(m, p, binders);
}

inline std::set<CanonicalTerm> one_step_reducts(const Term& m) {
  std::set<CanonicalTerm> out;
  for (const auto& p : redex_positions(m)) out.insert(canonicalize(reduce_at(m, p)));
  return out;
}

inline std::optional<RedexPosition> head_redex_position(const Term& m) {
  const HeadForm h = head_form(m);
  if (h.head_normal()) return std::nullopt;
  RedexPosition p;
  for (const auto& b : h.prefix) p.push_back(b.kind == TermKind::Lam ? PathStep::LamBody : PathStep::MuBody);
  p.insert(p.end(), h.spine.size(), PathStep::AppFun);
  return p;
}

/// M with its head redex contracted; nullopt in head normal form.
inline std::optional<Term> hred(const Term& m) {
  const HeadForm h = head_form(m);
  if (h.head_normal()) return std::nullopt;
  NameSet binders;
  for (const auto& b : h.prefix) binders.insert(b.name);
  return reassemble(h.prefix, contract_redex(std::get<HeadRedex>(h.head).redex, binders), h.spine);
}

/// The members of arg(M) in order: the spine when the head is a variable,
/// otherwise the redex body P, its argument Q and the rest of the spine.
/// P keeps the redex binder as a free variable.
inline std::vector<Term> arg_terms(const Term& m) {
  HeadForm h = head_form(m);
  std::vector<Term> out;
  if (const auto* r = std::get_if<HeadRedex>(&h.head)) {
    out.push_back(r->redex.fun().body());
    out.push_back(r->redex.arg());
  }
  out.insert(out.end(), h.spine.begin(), h.spine.end());
  return out;
}

/// arg(M) as a set of alpha-classes.
inline std::set<CanonicalTerm> arg(const Term& m) {
  std::set<CanonicalTerm> out;
  for (const Term& t : arg_terms(m)) out.insert(canonicalize(t));
  return out;
}

enum class Strategy { Head, LeftmostOutermost, Random };

struct TraceStep {
  RedexPosition position;
  Term term;
};

struct Trace {
  Term start;
  std::vector<TraceStep> steps;
  bool truncated = false;  // max_steps reached while a redex remained

  const Term& last() const { return steps.empty() ? start : steps.back().term; }
};

/// Reduces with the given strategy for at most `max_steps` steps. `head` stops
/// at head normal form, the others at normal form.
inline Trace reduce_with_strategy(const Term& m, Strategy strategy, std::size_t max_steps, std::uint64_t seed = 0) {
  Trace trace{m, {}, false};
  std::mt19937_64 rng(seed);
  Term cur = m;
  while (true) {
    std::optional<RedexPosition> next;
    if (strategy == Strategy::Head) {
      next = head_redex_position(cur);
    } else {
      auto all = redex_positions(cur);
      if (!all.empty()) {
        std::size_t pick = 0;
        if (strategy == Strategy::Random) pick = std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng);
        next = std::move(all[pick]);
      }
    }
    if (!next) break;
    if (trace.steps.size() == max_steps) {
      trace.truncated = true;
      break;
    }
    cur = reduce_at(cur, *next);
    trace.steps.push_back({std::move(*next), cur});
  }
  return trace;
}

/// One line per step: `<index> <path> <term>`, indices from 1.
inline std::string format_trace(const Trace& t) {
  std::string out;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    out += std::to_string(i + 1) + ' ' + print_path(t.steps[i].position) + ' ' + print_term(t.steps[i].term) + '\n';
  }
  return out;
}

}  // namespace lmu
