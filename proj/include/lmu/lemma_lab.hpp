#pragma once

// Executable forms of the strong normalization lemmas: individual checks,
// instance samplers, the exhaustive corpus pass and suite runners.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lmu/canonical.hpp"
#include "lmu/enumerate.hpp"
#include "lmu/reduction.hpp"
#include "lmu/rewrite.hpp"
#include "lmu/sn.hpp"
#include "lmu/syntax.hpp"
#include "lmu/term.hpp"
#include "lmu/typing.hpp"

namespace lmu {

class PreconditionViolation : public std::invalid_argument {
 public:
  explicit PreconditionViolation(const std::string& what) : std::invalid_argument("precondition violated: " + what) {}
};

class MixedTypes : public std::invalid_argument {
 public:
  explicit MixedTypes(const std::string& what) : std::invalid_argument("mixed types: " + what) {}
};

/// [x1 := \u.(x1 (u y)), ..., xn := \u.(xn (u y))] with u fresh.
inline Substitution build_mu_substitution(const std::vector<std::string>& xs, const std::string& y) {
  NameSet avoid;
  for (const auto& x : xs) {
    if (!avoid.insert(x).second) throw PreconditionViolation("'" + x + "' is listed twice");
  }
  if (avoid.contains(y)) throw PreconditionViolation("'" + y + "' is also a substituted variable");
  avoid.insert(y);
  const std::string u = fresh_name("u", avoid);
  Substitution s;
  for (const auto& x : xs) s.emplace(x, Term::lam(u, Term::app(Term::var(x), Term::app(Term::var(u), Term::var(y)))));
  return s;
}

inline std::string print_substitution(const Substitution& s) {
  std::string out = "[";
  for (const auto& [x, n] : s) {
    if (out.size() > 1) out += ", ";
    out += x + " := " + print_term(n);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Measures

struct MeasureQuadruple {
  std::size_t lgt_sigma = 0;
  std::size_t eta_m = 0;
  std::size_t cxty_m = 0;
  std::size_t eta_sigma = 0;

  friend auto operator<=>(const MeasureQuadruple&, const MeasureQuadruple&) = default;
};

inline std::string to_string(const MeasureQuadruple& q) {
  return "(" + std::to_string(q.lgt_sigma) + ", " + std::to_string(q.eta_m) + ", " + std::to_string(q.cxty_m) + ", " +
         std::to_string(q.eta_sigma) + ")";
}

using Measure = std::variant<MeasureQuadruple, Unknown>;

namespace detail {

// The type shared by the domain of `s` under `g`; nullopt for an empty s.
inline std::optional<Type> common_type(const Context& g, const Substitution& s) {
  std::optional<Type> common;
  for (const auto& [x, n] : s) {
    auto it = g.find(x);
    if (it == g.end()) throw PreconditionViolation("substituted variable '" + x + "' is not in the context");
    if (common && *common != it->second) {
      throw MixedTypes("'" + x + "' has type " + print_type(it->second) + ", others " + print_type(*common));
    }
    common = it->second;
  }
  return common;
}

// eta, nullopt when fuel runs out; NotSN is a precondition failure.
inline std::optional<std::size_t> eta_or_unknown(const Term& t, std::size_t fuel, const std::string& what) {
  EtaValue e = eta(t, fuel);
  if (const auto* k = std::get_if<std::size_t>(&e)) return *k;
  if (std::holds_alternative<NotSN>(e)) throw PreconditionViolation(what + " is not strongly normalizing: " + print_term(t));
  return std::nullopt;
}

}  // namespace detail

/// (lgt(s), eta(M), cxty(M), eta(s)) where eta(s) sums eta(s(x)) over the free
/// occurrences of each x in M. The lgt of an empty substitution is 0.
inline Measure measure_quadruple(const Context& g, const Substitution& s, const Term& m, std::size_t fuel = kDefaultFuel) {
  const auto common = detail::common_type(g, s);
  MeasureQuadruple q;
  q.lgt_sigma = common ? lgt(*common) : 0;
  q.cxty_m = cxty(m);
  const auto em = detail::eta_or_unknown(m, fuel, "M");
  if (!em) return Unknown{fuel};
  q.eta_m = *em;
  for (const auto& [x, n] : s) {
    const auto en = detail::eta_or_unknown(n, fuel, "the image of '" + x + "'");
    if (!en) return Unknown{fuel};
    q.eta_sigma += free_occurrences(m, x) * *en;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Single-instance checks

enum class Verdict { Holds, Fails, Undecided };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Undecided: return "Undecided";
  }
  return "?";
}

struct CheckResult {
  Verdict verdict = Verdict::Holds;
  std::string detail;  // counterexample or the statuses that decided it

  bool holds() const { return verdict == Verdict::Holds; }
};

/// arg(M[x:=N]) against arg(N) u {N} u {Q[x:=N] | Q in arg(M)}, up to alpha.
///
/// M is first renamed apart from x and the free variables of N, so that a
/// binder of M never captures or hides them.
inline CheckResult check_arg_substitution_inclusion(const Term& m, const std::string& x, const Term& n) {
  NameSet avoid = free_vars(n);
  avoid.insert(x);
  const Term mm = decode(canonicalize(m), avoid);

  const auto lhs = arg(substitute(mm, x, n));
  std::set<CanonicalTerm> rhs = arg(n);
  rhs.insert(canonicalize(n));
  for (const Term& q : arg_terms(mm)) rhs.insert(canonicalize(substitute(q, x, n)));

  for (const auto& e : lhs) {
    if (rhs.contains(e)) continue;
    CheckResult r{Verdict::Fails, "arg(M[x:=N]) contains " + print_canonical(e) + ", which is not in the right-hand side"};
    const HeadForm h = head_form(mm);
    if (const auto* v = std::get_if<HeadVar>(&h.head); v && v->name == x && !h.spine.empty() && n.is_binder()) {
      r.detail += " (x heads a non-empty spine and N is a binder";
      if (canonicalize(n.body()) == e) r.detail += "; the element is the body of N";
      r.detail += ")";
    }
    return r;
  }
  return {};
}

namespace detail {
inline std::string status_word(const SnStatus& s) {
  if (is_sn(s)) return "SN";
  if (is_not_sn(s)) return "NotSN";
  return "Unknown";
}
}  // namespace detail

/// M in SN iff arg(M) in SN and hred(M) in SN, on the statuses found within
/// `fuel`. A missing head redex counts as SN.
inline CheckResult check_sn_decomposition(const Term& m, std::size_t fuel = kDefaultFuel) {
  const SnStatus whole = explore_sn(m, fuel);
  bool undecided = std::holds_alternative<Unknown>(whole);
  bool parts_sn = true;
  std::string detail = "M " + detail::status_word(whole) + "; arg";
  for (const Term& a : arg_terms(m)) {
    const SnStatus s = explore_sn(a, fuel);
    undecided = undecided || std::holds_alternative<Unknown>(s);
    parts_sn = parts_sn && is_sn(s);
    detail += " " + detail::status_word(s);
  }
  detail += "; hred ";
  bool head_sn = true;
  if (auto h = hred(m)) {
    const SnStatus s = explore_sn(*h, fuel);
    undecided = undecided || std::holds_alternative<Unknown>(s);
    head_sn = is_sn(s);
    detail += detail::status_word(s);
  } else {
    detail += "none";
  }
  if (undecided) return {Verdict::Undecided, detail};
  return {is_sn(whole) == (parts_sn && head_sn) ? Verdict::Holds : Verdict::Fails, detail};
}

struct ApplicationCheck : CheckResult {
  std::size_t eta_m = 0;
  std::optional<std::size_t> eta_my;
};

/// (M y) is SN whenever M is, with eta(M y) >= eta(M). y must not occur free
/// in M unless `allow_free_y`.
inline ApplicationCheck check_application_to_variable(const Term& m, const std::string& y, std::size_t fuel = kDefaultFuel,
                                                      bool allow_free_y = false) {
  if (!allow_free_y && occurs_free(m, y)) throw PreconditionViolation("'" + y + "' occurs free in M");
  ApplicationCheck r;
  const SnStatus sm = explore_sn(m, fuel);
  if (is_not_sn(sm)) throw PreconditionViolation("M is not strongly normalizing");
  if (!is_sn(sm)) {
    r.verdict = Verdict::Undecided;
    r.detail = "M: " + describe(sm);
    return r;
  }
  r.eta_m = std::get<StronglyNormalizing>(sm).eta;
  const SnStatus smy = explore_sn(Term::app(m, Term::var(y)), fuel);
  if (const auto* s = std::get_if<StronglyNormalizing>(&smy)) {
    r.eta_my = s->eta;
    r.detail = "eta(M)=" + std::to_string(r.eta_m) + " eta(M y)=" + std::to_string(s->eta);
    if (s->eta < r.eta_m) r.verdict = Verdict::Fails;
    return r;
  }
  r.verdict = is_not_sn(smy) ? Verdict::Fails : Verdict::Undecided;
  r.detail = "(M y): " + describe(smy);
  return r;
}

struct SubstitutionCheck : CheckResult {
  Measure measure = Unknown{0};
  std::optional<std::size_t> eta_result;  // eta(M[s]) when found SN
};

/// M[s] is SN when every s(x) is SN and all substituted variables share
/// one type. The measure quadruple is recorded alongside.
inline SubstitutionCheck check_same_type_substitution(const TypedInstance& inst, const Substitution& s,
                                                      std::size_t fuel = kDefaultFuel) {
  if (auto t = try_infer(inst.context, inst.term); !t || *t != inst.type) {
    throw PreconditionViolation("the instance does not have type " + print_type(inst.type));
  }
  const auto common = detail::common_type(inst.context, s);
  SubstitutionCheck r;
  for (const auto& [x, n] : s) {
    if (auto t = try_infer(inst.context, n); !t || *t != *common) {
      throw PreconditionViolation("the image of '" + x + "' does not have type " + print_type(*common));
    }
    const SnStatus sn = explore_sn(n, fuel);
    if (is_not_sn(sn)) throw PreconditionViolation("the image of '" + x + "' is not strongly normalizing");
    if (!is_sn(sn)) {
      r.verdict = Verdict::Undecided;
      r.detail = "image of " + x + ": " + describe(sn);
      return r;
    }
  }
  r.measure = measure_quadruple(inst.context, s, inst.term, fuel);
  const SnStatus result = explore_sn(substitute_parallel(inst.term, s), fuel);
  r.detail = "M[s]: " + describe(result);
  if (const auto* sn = std::get_if<StronglyNormalizing>(&result)) r.eta_result = sn->eta;
  if (const auto* q = std::get_if<MeasureQuadruple>(&r.measure)) r.detail += "; measure " + to_string(*q);
  if (is_not_sn(result)) r.verdict = Verdict::Fails;
  if (std::holds_alternative<Unknown>(result)) r.verdict = Verdict::Undecided;
  return r;
}

// ---------------------------------------------------------------------------
// Reports

struct LemmaFailure {
  std::string term;
  std::string context;
  std::string reason;

  friend auto operator<=>(const LemmaFailure&, const LemmaFailure&) = default;
};

struct LemmaStats {
  std::size_t max_eta = 0;
  std::size_t max_graph_nodes = 0;
  std::uint64_t wall_ms = 0;
  std::uint64_t undecided = 0;  // excluded from instances
};

/// passes + failures.size() == instances.
struct LemmaReport {
  std::string suite;
  std::size_t max_cxty = 0;
  std::size_t lgt_bound = 0;
  std::size_t fuel = 0;
  std::uint64_t seed = 0;
  std::uint64_t instances = 0;
  std::uint64_t passes = 0;
  std::vector<LemmaFailure> failures;
  LemmaStats stats;

  bool ok() const { return failures.empty() && passes == instances; }
};

// ---------------------------------------------------------------------------
// Exhaustive corpus pass

struct CorpusOptions {
  std::size_t max_cxty = 7;
  std::size_t lgt_bound = 2;  // binder annotations range over types of lgt <= this
  std::size_t fuel = kDefaultFuel;
  bool subject_reduction = true;
  bool eta_step = true;
  bool decomposition = true;
  bool round_trip = true;
  std::size_t keep_len = 40;            // codes up to this many words stay memoized
  std::size_t memo_limit = 6'000'000;   // entries; the memo is dropped beyond this
};

struct CorpusTally {
  std::uint64_t terms = 0;
  std::uint64_t normal_forms = 0;
  std::uint64_t sn = 0;
  std::uint64_t sr_edges = 0;           // reduction edges checked
  std::uint64_t sr_violations = 0;      // edges whose endpoints have different types
  std::uint64_t step_checked = 0;       // SN terms with at least one reduct
  std::uint64_t decomposition_decided = 0;
  std::uint64_t decomposition_holds = 0;
  std::uint64_t decomposition_undecided = 0;
  std::uint64_t round_trips = 0;
  std::size_t max_eta = 0;
  std::size_t max_graph_nodes = 0;
  std::vector<LemmaFailure> sn_failures;
  std::vector<LemmaFailure> sr_failures;  // first violation per corpus term
  std::vector<LemmaFailure> step_failures;
  std::vector<LemmaFailure> decomposition_failures;
  std::vector<LemmaFailure> round_trip_failures;

  void merge(const CorpusTally& o) {
    terms += o.terms;
    normal_forms += o.normal_forms;
    sn += o.sn;
    sr_edges += o.sr_edges;
    sr_violations += o.sr_violations;
    step_checked += o.step_checked;
    decomposition_decided += o.decomposition_decided;
    decomposition_holds += o.decomposition_holds;
    decomposition_undecided += o.decomposition_undecided;
    round_trips += o.round_trips;
    max_eta = std::max(max_eta, o.max_eta);
    max_graph_nodes = std::max(max_graph_nodes, o.max_graph_nodes);
    auto append = [](auto& to, const auto& from) { to.insert(to.end(), from.begin(), from.end()); };
    append(sn_failures, o.sn_failures);
    append(sr_failures, o.sr_failures);
    append(step_failures, o.step_failures);
    append(decomposition_failures, o.decomposition_failures);
    append(round_trip_failures, o.round_trip_failures);
  }
};

/// Every well-typed term over one context, by size, with the checks enabled
/// in the options:
///
///  - strong normalization of each term (explored on codes with a shared memo);
///  - subject reduction on every edge explored, through the code-level type
///    checker, plus generation soundness at the root;
///  - the eta step property against the named-term reducts, which also
///    cross-checks the code engine's reduct set;
///  - the SN decomposition via code-level arg and hred;
///  - parse(print(M)) == M.
class CorpusRunner {
 public:
  using Progress = std::function<void(std::size_t size, const CorpusTally&)>;

  CorpusRunner(const Context& g, CorpusOptions options)
      : context_(g),
        options_(options),
        enumerator_(types_, g, enumerate_types(options.lgt_bound)),
        engine_({options.fuel, options.keep_len}),
        parts_({options.fuel, options.keep_len}) {
    for (auto t : enumerator_.free_types()) free_types_.push_back(t);
    context_text_ = print_context(g);
    if (options_.subject_reduction) {
      engine_.set_observer([this](const code::Code& node, std::size_t, std::span<const code::Code> reducts) {
        const auto from = code::infer(node, types_, free_types_);
        for (const auto& r : reducts) {
          ++tally_.sr_edges;
          const auto to = code::infer(r, types_, free_types_);
          if (from && to == from) continue;
          sr_violation("edge " + render(node) + " -> " + render(r) + ": the reduct " +
                       (to ? "has a different type" : "is ill-typed"));
        }
      });
    }
  }

  CorpusTally run(const Progress& progress = {}) {
    for (std::size_t size = 1; size <= options_.max_cxty; ++size) {
      enumerator_.for_each_any(size, [this](const code::Code& c, code::TypeTable::Id t) { visit(c, t); });
      if (progress) progress(size, tally_);
    }
    return std::move(tally_);
  }

 private:
  using Kind = SnEngine::Result::Kind;

  void sr_violation(const std::string& why) {
    ++tally_.sr_violations;
    if (!sr_failed_) tally_.sr_failures.push_back({print_term(*root_), context_text_, why});
    sr_failed_ = true;
  }

  std::string render(const code::Code& c) const { return print_canonical(normalize_free(c, enumerator_.free_names())); }

  SnEngine::Result explore(SnEngine& engine, const code::Code& c) {
    if (engine.memo_size() > options_.memo_limit) engine.clear();
    return engine.explore(c);
  }

  void visit(const code::Code& c, code::TypeTable::Id t) {
    ++tally_.terms;
    sr_failed_ = false;
    const Term m = decode(normalize_free(c, enumerator_.free_names()));
    root_ = &m;
    const bool redex = code::has_redex(c);

    if (options_.round_trip) {
      ++tally_.round_trips;
      const std::string text = print_term(m);
      std::string why;
      try {
        if (!(parse_term(text) == m)) why = "parsed back to a different term";
      } catch (const ParseError& e) {
        why = std::string("does not parse: ") + e.what();
      }
      if (!why.empty()) tally_.round_trip_failures.push_back({text, context_text_, why});
    }

    if (options_.subject_reduction && code::infer(c, types_, free_types_) != t) {
      sr_violation("the generated term does not re-check at its type");
    }

    SnEngine::Result res;
    if (redex) {
      res = explore(engine_, c);
    } else {
      ++tally_.normal_forms;
      res.visited = 1;
    }
    if (res.kind == Kind::SN) {
      ++tally_.sn;
      tally_.max_eta = std::max(tally_.max_eta, res.eta);
      tally_.max_graph_nodes = std::max(tally_.max_graph_nodes, std::max<std::size_t>(res.visited, 1));
    } else {
      tally_.sn_failures.push_back({print_term(m), context_text_,
                                    res.kind == Kind::NotSN ? "NotSN cycle_length=" + std::to_string(res.cycle.size())
                                                            : "Unknown nodes_visited=" + std::to_string(res.visited)});
    }

    if (options_.eta_step && redex && res.kind == Kind::SN) step_check(c, m, res.eta);
    if (options_.decomposition) decomposition_check(c, m, res.kind);
    root_ = nullptr;
  }

  // Reducts via the named route; their etas via the engine.
  void step_check(const code::Code& c, const Term& m, std::size_t eta) {
    ++tally_.step_checked;
    std::vector<code::Code> named;
    for (const auto& r : one_step_reducts(m)) named.push_back(relabel_free(r, enumerator_.free_names()));
    std::sort(named.begin(), named.end());
    auto fail = [&](std::string why) { tally_.step_failures.push_back({print_term(m), context_text_, std::move(why)}); };
    if (named != SnEngine::reducts(c)) {
      fail("named and code reduct sets differ");
      return;
    }
    std::vector<std::size_t> etas;
    for (const auto& r : named) {
      if (auto k = engine_.known(r)) {
        etas.push_back(*k);
        continue;
      }
      const auto res = explore(engine_, r);
      if (res.kind != Kind::SN) {
        fail("reduct " + render(r) + " is not SN");
        return;
      }
      etas.push_back(res.eta);
    }
    const std::size_t top = *std::max_element(etas.begin(), etas.end());
    if (top + 1 != eta) fail("max eta over reducts is " + std::to_string(top) + ", eta is " + std::to_string(eta));
  }

  void decomposition_check(const code::Code& c, const Term& m, Kind whole) {
    bool undecided = whole == Kind::Unknown;
    bool parts_sn = true;
    for (const auto& a : code::head_args(c)) {
      const auto k = explore(parts_, a).kind;
      undecided = undecided || k == Kind::Unknown;
      parts_sn = parts_sn && k == Kind::SN;
    }
    bool head_sn = true;
    if (auto h = code::hred(c)) {
      Kind k = Kind::SN;
      if (!engine_.known(*h)) k = explore(engine_, *h).kind;
      undecided = undecided || k == Kind::Unknown;
      head_sn = k == Kind::SN;
    }
    if (undecided) {
      ++tally_.decomposition_undecided;
      return;
    }
    ++tally_.decomposition_decided;
    if ((whole == Kind::SN) == (parts_sn && head_sn)) {
      ++tally_.decomposition_holds;
    } else {
      tally_.decomposition_failures.push_back({print_term(m), context_text_, "biconditional violated"});
    }
  }

  Context context_;
  CorpusOptions options_;
  code::TypeTable types_;
  TypedEnumerator enumerator_;
  std::vector<std::optional<code::TypeTable::Id>> free_types_;
  std::string context_text_;
  SnEngine engine_;
  SnEngine parts_;  // arg members carry escaped binders as extra free variables, so they stay out of the typed memo
  CorpusTally tally_;
  const Term* root_ = nullptr;
  bool sr_failed_ = false;
};

inline CorpusTally run_corpus(const Context& g, const CorpusOptions& options, const CorpusRunner::Progress& progress = {}) {
  return CorpusRunner(g, options).run(progress);
}

// ---------------------------------------------------------------------------
// Samplers

/// Uniform sample (reservoir) of `count` well-typed terms of size <= max_cxty,
/// drawn from the union of the corpora over `contexts`.
inline std::vector<TypedInstance> sample_corpus(const std::vector<Context>& contexts, std::size_t max_cxty,
                                                std::size_t lgt_bound, std::size_t count, std::uint64_t seed) {
  struct Kept {
    std::size_t context;
    code::Code code;
    code::TypeTable::Id type;
  };
  std::mt19937_64 rng(seed);
  std::vector<Kept> kept;
  std::vector<std::unique_ptr<code::TypeTable>> tables;
  std::vector<std::vector<std::string>> names;
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    tables.push_back(std::make_unique<code::TypeTable>());
    TypedEnumerator en(*tables.back(), contexts[i], enumerate_types(lgt_bound));
    names.push_back(en.free_names());
    for (std::size_t size = 1; size <= max_cxty; ++size) {
      en.for_each_any(size, [&](const code::Code& c, code::TypeTable::Id t) {
        if (kept.size() < count) {
          kept.push_back({i, c, t});
        } else if (auto j = std::uniform_int_distribution<std::uint64_t>(0, seen)(rng); j < count) {
          kept[j] = {i, c, t};
        }
        ++seen;
      });
    }
  }
  std::vector<TypedInstance> out;
  for (const auto& k : kept) {
    out.push_back({contexts[k.context], decode(normalize_free(k.code, names[k.context])), tables[k.context]->to_type(k.type)});
  }
  return out;
}

/// An instance of the inclusion check; `context` types M's free variables.
struct ArgTriple {
  Context context;
  Term m;
  std::string x;
  Term n;
};

namespace detail {
inline void typed_subterms(const Term& m, Context& g, std::vector<std::pair<Term, Context>>& out) {
  out.emplace_back(m, g);
  if (m.is_binder()) {
    if (!m.annotation()) return;
    auto saved = g.find(m.name()) != g.end() ? std::optional<Type>(g.at(m.name())) : std::nullopt;
    g.insert_or_assign(m.name(), m.is_lam() ? *m.annotation() : negation(*m.annotation()));
    typed_subterms(m.body(), g, out);
    if (saved) {
      g.insert_or_assign(m.name(), *saved);
    } else {
      g.erase(m.name());
    }
  } else if (m.is_app()) {
    typed_subterms(m.fun(), g, out);
    typed_subterms(m.arg(), g, out);
  }
}
}  // namespace detail

/// (M, x, N) triples: a corpus term, one of its subterm occurrences M with a
/// free variable x (bound variables of the enclosing term become free, typed
/// by their binders), and N drawn from a pool of random terms of x's type of
/// size <= pool_size over M's context.
inline std::vector<ArgTriple> sample_arg_triples(const std::vector<Context>& contexts, std::size_t max_cxty,
                                                 std::size_t lgt_bound, std::size_t count, std::uint64_t seed,
                                                 std::size_t pool_size = 6) {
  const auto corpus = sample_corpus(contexts, max_cxty, lgt_bound, count, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<ArgTriple> out;
  for (const auto& inst : corpus) {
    std::vector<std::pair<Term, Context>> subs;
    Context g = inst.context;
    detail::typed_subterms(inst.term, g, subs);
    std::erase_if(subs, [](const auto& s) { return free_vars(s.first).empty(); });
    if (subs.empty()) {
      // Closed throughout: only the vacuous substitution is available.
      out.push_back({inst.context, inst.term, "v", Term::var("v")});
      continue;
    }
    auto& [m, ctx] = subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)];
    const NameSet fv = free_vars(m);
    auto it = fv.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(std::uniform_int_distribution<std::size_t>(0, fv.size() - 1)(rng)));
    const std::string x = *it;
    const std::size_t budget = std::uniform_int_distribution<std::size_t>(1, pool_size)(rng);
    auto n = random_typed_term(ctx, ctx.at(x), budget, rng());
    out.push_back({ctx, m, x, n ? n->term : Term::var(x)});
  }
  return out;
}

struct ApplicationInstance {
  Term m;
  std::string y;
  bool typed = false;
};

/// SN terms M, alternately typed (random goal-directed) and untyped (random
/// shape), with y fresh for M, or taken from FV(M) when `free_y` and M has
/// free variables. Terms that are not found SN within `fuel` are skipped.
inline std::vector<ApplicationInstance> sample_application_instances(std::size_t count, std::size_t max_cxty,
                                                                     std::size_t lgt_bound, std::size_t fuel,
                                                                     std::uint64_t seed, bool free_y = false) {
  std::mt19937_64 rng(seed);
  const auto types = enumerate_types(lgt_bound);
  const Context g = parse_context("v:bot, w:bot -> bot");
  std::vector<ApplicationInstance> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 50 * count; ++attempt) {
    const bool typed = attempt % 2 == 0;
    const std::size_t size = std::uniform_int_distribution<std::size_t>(typed ? 1 : 2, std::max<std::size_t>(max_cxty, 2))(rng);
    std::optional<Term> m;
    if (typed) {
      const Type& a = types[std::uniform_int_distribution<std::size_t>(0, types.size() - 1)(rng)];
      if (auto inst = random_typed_term(g, a, size, rng())) m = inst->term;
    } else {
      m = random_term({"v", "w"}, size, rng);
    }
    if (!m || !is_sn(explore_sn(*m, fuel))) continue;
    const NameSet fv = free_vars(*m);
    std::string y = fresh_name("y", fv);
    if (free_y && !fv.empty()) y = *fv.begin();
    out.push_back({*m, y, typed});
  }
  return out;
}

struct SameTypeInstance {
  TypedInstance instance;
  Substitution sigma;
  bool mu_images = false;
};

/// Typed M over {v:bot, x1:A, x2:A} with s = [x1:=N1] or [x1:=N1, x2:=N2],
/// all images of type A. Every `mu_every`-th instance uses mu-abstractions
/// mu k:A. P as images.
inline std::vector<SameTypeInstance> sample_same_type_instances(std::size_t count, std::size_t max_cxty,
                                                                std::size_t lgt_bound, std::uint64_t seed,
                                                                std::size_t mu_every = 5) {
  std::mt19937_64 rng(seed);
  const auto types = enumerate_types(lgt_bound);
  auto pick_type = [&] { return types[std::uniform_int_distribution<std::size_t>(0, types.size() - 1)(rng)]; };
  auto pick_size = [&](std::size_t lo) {
    return std::uniform_int_distribution<std::size_t>(lo, std::max(lo, max_cxty))(rng);
  };
  std::vector<SameTypeInstance> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 50 * count; ++attempt) {
    const Type a = pick_type();
    Context g{{"v", Type::bot()}, {"x1", a}, {"x2", a}};
    const Type b = pick_type();
    // Prefer terms that mention a substituted variable.
    std::optional<TypedInstance> inst;
    for (int tries = 0; tries < 8; ++tries) {
      inst = random_typed_term(g, b, pick_size(1), rng());
      if (inst && (occurs_free(inst->term, "x1") || occurs_free(inst->term, "x2"))) break;
    }
    if (!inst) continue;
    const bool mu = mu_every != 0 && out.size() % mu_every == 0;
    const std::size_t domain = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    Substitution s;
    for (std::size_t i = 1; i <= domain; ++i) {
      std::optional<Term> image;
      if (mu) {
        Context inner = g;
        const std::string k = fresh_name("k", {"v", "x1", "x2"});
        inner.emplace(k, negation(a));
        if (auto body = random_typed_term(inner, Type::bot(), pick_size(2), rng())) image = Term::mu(k, a, body->term);
      } else if (auto n = random_typed_term(g, a, pick_size(1), rng())) {
        image = n->term;
      }
      if (!image) break;
      s.emplace("x" + std::to_string(i), *image);
    }
    if (s.size() != domain) continue;
    out.push_back({std::move(*inst), std::move(s), mu});
  }
  return out;
}

/// Redexes (mu x.P) Q: even-numbered ones typed with an arrow annotation,
/// odd-numbered ones unannotated random shapes.
inline std::vector<Term> sample_mu_redexes(std::size_t count, std::size_t max_cxty, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Type> arrows;
  for (const Type& t : enumerate_types(2)) {
    if (t.is_arrow()) arrows.push_back(t);
  }
  const Context g = parse_context("v:bot, w:bot -> bot");
  auto size = [&] { return std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(max_cxty, 2))(rng); };
  std::vector<Term> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 50 * count; ++attempt) {
    if (out.size() % 2 == 0) {
      const Type a = arrows[std::uniform_int_distribution<std::size_t>(0, arrows.size() - 1)(rng)];
      Context inner = g;
      inner.emplace("x", negation(a));
      auto p = random_typed_term(inner, Type::bot(), size(), rng());
      auto q = random_typed_term(g, a.domain(), size(), rng());
      if (p && q) out.push_back(Term::app(Term::mu("x", a, p->term), q->term));
    } else {
      Term p = random_term({"x", "v", "y", "z"}, size(), rng);
      Term q = random_term({"v", "y", "z"}, size(), rng);
      out.push_back(Term::app(Term::mu("x", p), q));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalog of non-normalizing terms

struct CatalogEntry {
  std::string name;
  Term term;
};

/// Every `*.lm` file in `dir`, by file name; each holds one term.
inline std::vector<CatalogEntry> load_catalog(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".lm") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CatalogEntry> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream text;
    text << in.rdbuf();
    try {
      out.push_back({f.stem().string(), parse_term(text.str())});
    } catch (const ParseError& e) {
      throw std::runtime_error(f.string() + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suites

struct SuiteConfig {
  std::string suite;  // l3 l4 l5 l7 sr thm8
  std::size_t max_cxty = 7;
  std::size_t lgt_bound = 2;
  std::size_t fuel = kDefaultFuel;
  std::uint64_t seed = 0;
  std::vector<Context> contexts{Context{}, Context{{"v", Type::bot()}}};
  std::size_t samples = 0;  // sampled suites; 0 picks the suite default
  bool free_y = false;      // l5: take y from FV(M) when possible
  std::vector<CatalogEntry> catalog;  // l4: extra, untyped instances
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"l3", "l4", "l5", "l7", "sr", "thm8"};
  return names;
}

namespace detail {

inline void tally_verdict(LemmaReport& rep, const CheckResult& r, const std::string& term, const std::string& context) {
  switch (r.verdict) {
    case Verdict::Holds:
      ++rep.instances;
      ++rep.passes;
      break;
    case Verdict::Fails:
      ++rep.instances;
      rep.failures.push_back({term, context, r.detail});
      break;
    case Verdict::Undecided: ++rep.stats.undecided; break;
  }
}

inline void corpus_suite(const SuiteConfig& cfg, LemmaReport& rep) {
  CorpusOptions o;
  o.max_cxty = cfg.max_cxty;
  o.lgt_bound = cfg.lgt_bound;
  o.fuel = cfg.fuel;
  o.subject_reduction = cfg.suite == "sr";
  o.decomposition = cfg.suite == "l4";
  o.eta_step = false;
  o.round_trip = false;
  for (const auto& g : cfg.contexts) {
    const CorpusTally t = run_corpus(g, o);
    rep.stats.max_eta = std::max(rep.stats.max_eta, t.max_eta);
    rep.stats.max_graph_nodes = std::max(rep.stats.max_graph_nodes, t.max_graph_nodes);
    if (cfg.suite == "thm8") {
      rep.instances += t.terms;
      rep.passes += t.sn;
      rep.failures.insert(rep.failures.end(), t.sn_failures.begin(), t.sn_failures.end());
    } else if (cfg.suite == "sr") {
      rep.instances += t.terms;
      rep.passes += t.terms - t.sr_failures.size();
      rep.failures.insert(rep.failures.end(), t.sr_failures.begin(), t.sr_failures.end());
    } else {
      rep.instances += t.decomposition_decided;
      rep.passes += t.decomposition_holds;
      rep.stats.undecided += t.decomposition_undecided;
      rep.failures.insert(rep.failures.end(), t.decomposition_failures.begin(), t.decomposition_failures.end());
    }
  }
  if (cfg.suite == "l4") {
    for (const auto& e : cfg.catalog) tally_verdict(rep, check_sn_decomposition(e.term, cfg.fuel), print_term(e.term), "");
  }
}

}  // namespace detail

/// Runs one suite. The corpus suites (thm8, sr, l4) cover every term of size
/// <= max_cxty over each context; the others draw `samples` instances from
/// the seed.
inline LemmaReport run_suite(const SuiteConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  LemmaReport rep;
  rep.suite = cfg.suite;
  rep.max_cxty = cfg.max_cxty;
  rep.lgt_bound = cfg.lgt_bound;
  rep.fuel = cfg.fuel;
  rep.seed = cfg.seed;
  auto samples = [&](std::size_t dflt) { return cfg.samples ? cfg.samples : dflt; };

  if (cfg.suite == "thm8" || cfg.suite == "sr" || cfg.suite == "l4") {
    detail::corpus_suite(cfg, rep);
  } else if (cfg.suite == "l3") {
    for (const auto& t : sample_arg_triples(cfg.contexts, cfg.max_cxty, cfg.lgt_bound, samples(1000), cfg.seed)) {
      detail::tally_verdict(rep, check_arg_substitution_inclusion(t.m, t.x, t.n),
                            print_term(t.m) + " with " + t.x + " := " + print_term(t.n), print_context(t.context));
    }
  } else if (cfg.suite == "l5") {
    for (const auto& a : sample_application_instances(samples(1000), cfg.max_cxty, cfg.lgt_bound, cfg.fuel, cfg.seed,
                                                      cfg.free_y)) {
      const auto r = check_application_to_variable(a.m, a.y, cfg.fuel, cfg.free_y);
      if (r.eta_my) rep.stats.max_eta = std::max(rep.stats.max_eta, *r.eta_my);
      detail::tally_verdict(rep, r, print_term(Term::app(a.m, Term::var(a.y))), a.typed ? "typed" : "untyped");
    }
  } else if (cfg.suite == "l7") {
    for (const auto& s : sample_same_type_instances(samples(500), cfg.max_cxty, cfg.lgt_bound, cfg.seed)) {
      const auto r = check_same_type_substitution(s.instance, s.sigma, cfg.fuel);
      if (r.eta_result) rep.stats.max_eta = std::max(rep.stats.max_eta, *r.eta_result);
      detail::tally_verdict(rep, r, print_term(s.instance.term) + " " + print_substitution(s.sigma),
                            print_context(s.instance.context));
    }
  } else {
    throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
  }

  std::sort(rep.failures.begin(), rep.failures.end());
  rep.stats.wall_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  return rep;
}

}  // namespace lmu
