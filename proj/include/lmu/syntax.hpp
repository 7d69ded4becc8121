#pragma once

// Concrete syntax.
//
//   type ::= 'bot' | type '->' type | '(' type ')'          (-> is right-associative)
//   term ::= '\' x [':' type] '.' term                       (lambda; also U+03BB)
//          | 'mu' x [':' type] '.' term                      (mu; also U+03BC)
//          | term term                                       (left-associative)
//          | x | '(' term ')'
//
// Binder bodies extend as far right as possible. `--` starts a line comment.
// A mu annotation is the result type A; the bound variable has type A -> bot.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lmu/term.hpp"
#include "lmu/type.hpp"

namespace lmu {

struct SourceSpan {
  std::size_t start_offset = 0;
  std::size_t end_offset = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, const std::string& message)
      : std::runtime_error(message + " at " + std::to_string(span.start_offset) + ".." + std::to_string(span.end_offset)),
        span_(span),
        message_(message) {}

  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

namespace detail {

enum class Tok { Lambda, Mu, Dot, Colon, LParen, RParen, Arrow, Comma, Ident, Bot, End };

struct Token {
  Tok kind;
  SourceSpan span;
  std::string_view text;  // into the parsed source
};

inline bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
inline bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '\''; }

inline std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  out.reserve(s.size() / 2 + 2);
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len, std::string_view text = {}) {
    out.push_back({k, {i, i + len}, text});
    i += len;
  };
  while (i < s.size()) {
    const char c = s[i];
    const char d = i + 1 < s.size() ? s[i + 1] : '\0';
    switch (c) {
      case ' ': case '\t': case '\n': case '\r': case '\f': case '\v': ++i; continue;
      case '\\': push(Tok::Lambda, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      case ':': push(Tok::Colon, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '-':
        if (d == '-') {
          while (i < s.size() && s[i] != '\n') ++i;
          continue;
        }
        if (d == '>') {
          push(Tok::Arrow, 2);
          continue;
        }
        break;
      case '\xCE':
        if (d == '\xBB') {
          push(Tok::Lambda, 2);
          continue;
        }
        if (d == '\xBC') {
          push(Tok::Mu, 2);
          continue;
        }
        break;
      default:
        if (ident_start(c)) {
          std::size_t j = i + 1;
          while (j < s.size() && ident_char(s[j])) ++j;
          const std::string_view word = s.substr(i, j - i);
          const Tok k = word == "mu" ? Tok::Mu : word == "bot" ? Tok::Bot : Tok::Ident;
          push(k, j - i, word);
          continue;
        }
    }
    std::size_t len = 1;
    // Keep multi-byte UTF-8 sequences together in the error span.
    while (i + len < s.size() && (static_cast<unsigned char>(s[i + len]) & 0xC0) == 0x80) ++len;
    throw ParseError({i, i + len}, "unknown token '" + std::string(s.substr(i, len)) + "'");
  }
  out.push_back({Tok::End, {s.size(), s.size()}, {}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Term whole_term() {
    Term t = term();
    expect_end();
    return t;
  }

  Type whole_type() {
    Type t = type();
    expect_end();
    return t;
  }

  std::vector<std::pair<std::string, Type>> bindings() {
    std::vector<std::pair<std::string, Type>> out;
    if (peek().kind == Tok::End) return out;
    while (true) {
      const Token& name = identifier("expected variable name");
      expect(Tok::Colon, "expected ':' after variable name");
      out.emplace_back(std::string(name.text), type());
      if (peek().kind != Tok::Comma) break;
      ++pos_;
    }
    expect_end();
    return out;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& message) const { throw ParseError(t.span, message); }

  void expect(Tok k, const std::string& message) {
    if (peek().kind != k) fail(peek(), message);
    ++pos_;
  }

  void expect_end() {
    if (peek().kind == Tok::RParen) fail(peek(), "unbalanced parentheses: unexpected ')'");
    if (peek().kind != Tok::End) fail(peek(), "unexpected token after end of input");
  }

  const Token& identifier(const std::string& message) {
    const Token& t = peek();
    if (t.kind == Tok::Mu || t.kind == Tok::Bot) fail(t, "keyword '" + std::string(t.text) + "' used as identifier");
    if (t.kind != Tok::Ident) fail(t, message);
    return next();
  }

  static bool starts_atom(Tok k) { return k == Tok::Ident || k == Tok::LParen || k == Tok::Bot; }
  static bool starts_binder(Tok k) { return k == Tok::Lambda || k == Tok::Mu; }

  Term term() { return starts_binder(peek().kind) ? binder() : application(); }

  Term binder() {
    const Token& kw = next();
    const TermKind kind = kw.kind == Tok::Lambda ? TermKind::Lam : TermKind::Mu;
    if (peek().kind == Tok::End) fail(kw, "dangling binder: missing variable");
    const std::string name(identifier("dangling binder: expected variable name").text);
    std::optional<Type> annot;
    if (peek().kind == Tok::Colon) {
      ++pos_;
      annot = type();
    }
    expect(Tok::Dot, "expected '.' after binder");
    if (peek().kind == Tok::End || peek().kind == Tok::RParen) fail(peek(), "dangling binder: missing body");
    return Term::binder(kind, name, std::move(annot), term());
  }

  Term application() {
    Term f = atom();
    while (true) {
      const Tok k = peek().kind;
      if (starts_atom(k)) {
        f = Term::app(std::move(f), atom());
      } else if (starts_binder(k)) {
        return Term::app(std::move(f), binder());
      } else {
        return f;
      }
    }
  }

  Term atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: ++pos_; return Term::var(std::string(t.text));
      case Tok::Bot: fail(t, "keyword 'bot' used as identifier");
      case Tok::LParen: {
        ++pos_;
        Term inner = term();
        if (peek().kind != Tok::RParen) fail(t, "unbalanced parentheses: '(' is never closed");
        ++pos_;
        return inner;
      }
      case Tok::RParen: fail(t, "unbalanced parentheses: unexpected ')'");
      case Tok::End: fail(t, "unexpected end of input: expected a term");
      default: fail(t, "expected a term");
    }
  }

  Type type() {
    Type dom = type_atom();
    if (peek().kind != Tok::Arrow) return dom;
    ++pos_;
    return Type::arrow(std::move(dom), type());
  }

  Type type_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Bot) {
      ++pos_;
      return Type::bot();
    }
    if (t.kind == Tok::LParen) {
      ++pos_;
      Type inner = type();
      if (peek().kind != Tok::RParen) fail(t, "unbalanced parentheses: '(' is never closed");
      ++pos_;
      return inner;
    }
    fail(t, "expected a type");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline void print_type(const Type& t, std::string& out) {
  if (t.is_bot()) {
    out += "bot";
    return;
  }
  if (t.domain().is_arrow()) {
    out += '(';
    print_type(t.domain(), out);
    out += ')';
  } else {
    out += "bot";
  }
  out += " -> ";
  print_type(t.codomain(), out);
}

// `tail`: nothing follows this term up to the closing parenthesis or end of
// input, so a trailing binder may be printed without parentheses.
inline void print_term(const Term& m, bool tail, std::string& out) {
  switch (m.kind()) {
    case TermKind::Var: out += m.name(); return;
    case TermKind::Lam:
    case TermKind::Mu:
      if (!tail) out += '(';
      out += m.is_lam() ? "\\" : "mu ";
      out += m.name();
      if (const auto& a = m.annotation()) {
        out += ':';
        if (a->is_bot()) {
          out += "bot";
        } else {
          out += '(';
          print_type(*a, out);
          out += ')';
        }
      }
      out += ". ";
      print_term(m.body(), true, out);
      if (!tail) out += ')';
      return;
    case TermKind::App: {
      print_term(m.fun(), false, out);
      out += ' ';
      const Term a = m.arg();
      if (a.is_app()) {
        out += '(';
        print_term(a, true, out);
        out += ')';
      } else {
        print_term(a, tail, out);
      }
      return;
    }
  }
}

}  // namespace detail

inline Term parse_term(std::string_view text) { return detail::Parser(text).whole_term(); }
inline Type parse_type(std::string_view text) { return detail::Parser(text).whole_type(); }

/// Comma-separated `name:Type` pairs, e.g. "v:bot, f:bot -> bot". Empty input
/// gives no bindings.
inline std::vector<std::pair<std::string, Type>> parse_bindings(std::string_view text) {
  return detail::Parser(text).bindings();
}

inline std::string print_type(const Type& t) {
  std::string out;
  detail::print_type(t, out);
  return out;
}

/// Minimal-parenthesis rendering; parse_term(print_term(m)) == m.
inline std::string print_term(const Term& m) {
  std::string out;
  detail::print_term(m, true, out);
  return out;
}

}  // namespace lmu
