#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lmu/syntax.hpp"
#include "lmu/term.hpp"
#include "lmu/type.hpp"

namespace lmu {

/// Typing context. Extending with an existing name replaces its type.
using Context = std::map<std::string, Type>;

inline Context parse_context(std::string_view text) {
  Context g;
  for (auto& [name, type] : parse_bindings(text)) g.insert_or_assign(std::move(name), std::move(type));
  return g;
}

inline std::string print_context(const Context& g) {
  std::string out;
  for (const auto& [name, type] : g) {
    if (!out.empty()) out += ", ";
    out += name + ":" + print_type(type);
  }
  return out;
}

enum class TypeErrorKind { UnannotatedBinder, UnboundVariable, NotAnArrow, ArgumentMismatch, MuBodyNotBot };

inline std::string_view to_string(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnannotatedBinder: return "UnannotatedBinder";
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
    case TypeErrorKind::NotAnArrow: return "NotAnArrow";
    case TypeErrorKind::ArgumentMismatch: return "ArgumentMismatch";
    case TypeErrorKind::MuBodyNotBot: return "MuBodyNotBot";
  }
  return "?";
}

inline std::string_view to_string(PathStep s) {
  switch (s) {
    case PathStep::LamBody: return "lam";
    case PathStep::MuBody: return "mu";
    case PathStep::AppFun: return "fun";
    case PathStep::AppArg: return "arg";
  }
  return "?";
}

/// Dot-separated rendering of a path; the empty path is "root".
inline std::string print_path(const std::vector<PathStep>& path) {
  if (path.empty()) return "root";
  std::string out;
  for (PathStep s : path) {
    if (!out.empty()) out += '.';
    out += to_string(s);
  }
  return out;
}

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, std::vector<PathStep> at, std::string detail)
      : std::runtime_error(std::string(to_string(kind)) + " at " + print_path(at) + ": " + detail),
        kind_(kind),
        at_(std::move(at)),
        detail_(std::move(detail)) {}

  TypeErrorKind kind() const { return kind_; }
  const std::vector<PathStep>& at() const { return at_; }
  const std::string& detail() const { return detail_; }

 private:
  TypeErrorKind kind_;
  std::vector<PathStep> at_;
  std::string detail_;
};

namespace detail {

struct Derivation {
  std::string rule;
  Term term;
  Type type;
  std::size_t depth;
};

class Checker {
 public:
  Checker(const Context& g, std::vector<Derivation>* trace) : context_(g), trace_(trace) {}

  Type infer(const Term& m) {
    const std::size_t slot = trace_ ? trace_->size() : 0;
    if (trace_) trace_->push_back({"", m, Type::bot(), path_.size()});
    auto [rule, type] = rule_for(m);
    if (trace_) {
      (*trace_)[slot].rule = rule;
      (*trace_)[slot].type = type;
    }
    return type;
  }

 private:
  std::pair<const char*, Type> rule_for(const Term& m) {
    switch (m.kind()) {
      case TermKind::Var: {
        auto it = context_.find(m.name());
        if (it == context_.end()) fail(TypeErrorKind::UnboundVariable, "'" + m.name() + "' is not in the context");
        return {"ax", it->second};
      }
      case TermKind::Lam: {
        const Type& a = annotation_of(m);
        Type body = under(m.name(), a, PathStep::LamBody, m.body());
        return {"->i", Type::arrow(a, std::move(body))};
      }
      case TermKind::Mu: {
        const Type& a = annotation_of(m);
        Type body = under(m.name(), negation(a), PathStep::MuBody, m.body());
        if (!body.is_bot()) fail(TypeErrorKind::MuBodyNotBot, "mu body has type " + print_type(body) + ", expected bot");
        return {"bot_c", a};
      }
      case TermKind::App: {
        path_.push_back(PathStep::AppFun);
        Type f = infer(m.fun());
        path_.pop_back();
        path_.push_back(PathStep::AppArg);
        Type x = infer(m.arg());
        path_.pop_back();
        if (!f.is_arrow()) fail(TypeErrorKind::NotAnArrow, "applied term has type " + print_type(f));
        if (f.domain() != x) {
          fail(TypeErrorKind::ArgumentMismatch,
               "expected argument of type " + print_type(f.domain()) + ", got " + print_type(x));
        }
        return {"->e", f.codomain()};
      }
    }
    fail(TypeErrorKind::NotAnArrow, "malformed term");
  }

  const Type& annotation_of(const Term& m) {
    if (!m.annotation()) fail(TypeErrorKind::UnannotatedBinder, "binder '" + m.name() + "' has no annotation");
    return *m.annotation();
  }

  Type under(const std::string& x, const Type& a, PathStep step, const Term& body) {
    std::optional<Type> saved;
    if (auto it = context_.find(x); it != context_.end()) saved = it->second;
    context_.insert_or_assign(x, a);
    path_.push_back(step);
    Type t = infer(body);
    path_.pop_back();
    if (saved) {
      context_.insert_or_assign(x, *saved);
    } else {
      context_.erase(x);
    }
    return t;
  }

  [[noreturn]] void fail(TypeErrorKind kind, std::string detail) const { throw TypeError(kind, path_, std::move(detail)); }

  Context context_;
  std::vector<Derivation>* trace_;
  std::vector<PathStep> path_;
};

}  // namespace detail

/// The type of an annotated term under `g`, using the rules ax, ->i, ->e and
/// bot_c with a shared context. Throws TypeError.
inline Type infer(const Context& g, const Term& m) { return detail::Checker(g, nullptr).infer(m); }

inline std::optional<Type> try_infer(const Context& g, const Term& m) {
  try {
    return infer(g, m);
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

/// The derivation as text, one node per line in pre-order, indented by depth:
/// `<rule> <term> : <type>` with rule one of ax, ->i, ->e, bot_c.
inline std::string explain(const Context& g, const Term& m) {
  std::vector<detail::Derivation> trace;
  detail::Checker(g, &trace).infer(m);
  std::string out;
  for (const auto& d : trace) {
    out.append(2 * d.depth, ' ');
    out += d.rule;
    out += ' ';
    out += print_term(d.term);
    out += " : ";
    out += print_type(d.type);
    out += '\n';
  }
  return out;
}

}  // namespace lmu
