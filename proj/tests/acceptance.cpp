// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Criteria 1, 2, 4, 5 and 10 share a single pass over the exhaustive corpus
// (every well-typed term of size <= 11 over {} and {v:bot}); the rest use
// seeded samples and the catalog of divergent terms in data/non_sn. An
// optional argument lowers the corpus size for quick runs.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "lmu/lmu.hpp"
#include "oracles.hpp"

using namespace lmu;

namespace {

constexpr std::size_t kOracleSize = 7;
constexpr std::uint64_t kSeed = 20240601;

int failed = 0;

void verdict(int n, bool ok, const std::string& what, const std::string& detail) {
  if (!ok) ++failed;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << n << "] " << what << ": " << detail << std::endl;
}

std::string first(const std::vector<LemmaFailure>& fs) {
  if (fs.empty()) return "";
  return "; first: " + fs.front().term + (fs.front().context.empty() ? "" : " [" + fs.front().context + "]") + ": " +
         fs.front().reason;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::vector<Context> corpus_contexts() { return {Context{}, parse_context("v:bot")}; }

// The template check for one mu-redex (mu x:T. P) Q: the contractum must be
// mu y. P[x := \z. y (z Q)] up to alpha, with y and z fresh for P and Q,
// y != z, and annotations y:B, z:A->B when T = A->B.
std::string mu_shape_problem(const Term& r) {
  const Term head = r.fun();
  const Term p = head.body();
  const Term q = r.arg();
  const Term out = contract_redex(r);
  if (!out.is_mu()) return "contractum is not a mu-abstraction";
  const std::string& y = out.name();
  NameSet fv = free_vars(p);
  fv.merge(free_vars(q));
  fv.erase(head.name());
  if (fv.contains(y)) return "y = " + y + " is free in P or Q";
  const bool arrow = head.annotation() && head.annotation()->is_arrow();
  if (arrow ? out.annotation() != head.annotation()->codomain() : out.annotation().has_value()) {
    return "wrong annotation on y";
  }
  // Each wrapper \z. y (z Q') introduced for an occurrence of x.
  std::size_t wrappers = 0;
  std::string problem;
  auto visit = [&](auto& self, const Term& t) -> void {
    switch (t.kind()) {
      case TermKind::Var: return;
      case TermKind::Lam:
        if (t.body().is_app() && t.body().fun() == Term::var(y) && t.body().arg().is_app() &&
            t.body().arg().fun() == Term::var(t.name()) && alpha_eq(t.body().arg().arg(), q)) {
          ++wrappers;
          if (t.name() == y) problem = "z = y";
          if (fv.contains(t.name())) problem = "z = " + t.name() + " is free in P or Q";
          if (arrow ? t.annotation() != head.annotation() : t.annotation().has_value()) problem = "wrong annotation on z";
        }
        self(self, t.body());
        return;
      case TermKind::Mu: self(self, t.body()); return;
      case TermKind::App:
        self(self, t.fun());
        self(self, t.arg());
        return;
    }
  };
  visit(visit, out.body());
  if (!problem.empty()) return problem;
  if (wrappers < free_occurrences(p, head.name())) return "missing \\z. y (z Q) wrappers";
  if (oracle::key(oracle::from_term(out)) != oracle::key(oracle::contract(oracle::from_term(r)))) {
    return "contractum differs from the template: " + print_term(out);
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t corpus_size = argc > 1 ? std::stoul(argv[1]) : 11;
  const auto catalog = load_catalog(LMU_DATA_DIR "/non_sn");

  // ---- the exhaustive corpus
  auto t0 = std::chrono::steady_clock::now();
  CorpusTally tally;
  for (const Context& g : corpus_contexts()) {
    CorpusOptions o;
    o.max_cxty = corpus_size;
    o.fuel = kDefaultFuel;
    const CorpusTally t = run_corpus(g, o, [&](std::size_t size, const CorpusTally& so_far) {
      std::cerr << "corpus {" << print_context(g) << "} size " << size << ": " << so_far.terms << " terms, "
                << static_cast<int>(seconds_since(t0)) << "s" << std::endl;
    });
    tally.merge(t);
  }
  const double corpus_s = seconds_since(t0);

  verdict(1, tally.sn == tally.terms && tally.sn_failures.empty(), "every typed term of size <= " + std::to_string(corpus_size) + " is SN",
          std::to_string(tally.sn) + "/" + std::to_string(tally.terms) + " SN, max eta " + std::to_string(tally.max_eta) +
              ", max graph " + std::to_string(tally.max_graph_nodes) + " nodes, " + std::to_string(int(corpus_s)) +
              "s" + first(tally.sn_failures));

  verdict(2, tally.sr_violations == 0 && tally.sr_failures.empty(), "reduction preserves types",
          std::to_string(tally.sr_edges) + " edges, " + std::to_string(tally.sr_violations) + " violations" +
              first(tally.sr_failures));

  // ---- eta against the path-search oracle, every corpus term of size <= 7
  {
    std::uint64_t checked = 0;
    std::vector<std::string> bad;
    for (const Context& g : corpus_contexts()) {
      code::TypeTable types;
      TypedEnumerator en(types, g, enumerate_types(2));
      for (std::size_t size = 1; size <= kOracleSize; ++size) {
        en.for_each_any(size, [&](const code::Code& c, code::TypeTable::Id) {
          ++checked;
          const Term m = decode(normalize_free(c, en.free_names()));
          const EtaValue e = eta(m);
          const std::size_t want = oracle::eta(oracle::from_term(m));
          if (!std::holds_alternative<std::size_t>(e) || std::get<std::size_t>(e) != want) {
            bad.push_back(print_term(m) + " (oracle " + std::to_string(want) + ")");
          }
        });
      }
    }
    std::string detail = std::to_string(checked) + " terms";
    if (!bad.empty()) detail += ", mismatch e.g. " + bad.front();
    verdict(3, bad.empty() && checked > 0, "eta equals the path-search oracle on sizes <= 7", detail);
  }

  verdict(4, tally.step_failures.empty(), "each step lowers eta, some step by exactly one",
          std::to_string(tally.step_checked) + " reducible terms" + first(tally.step_failures));

  // ---- SN decomposition: corpus plus catalog
  {
    std::uint64_t decided = tally.decomposition_decided, holds = tally.decomposition_holds;
    std::uint64_t undecided = tally.decomposition_undecided;
    std::vector<LemmaFailure> fails = tally.decomposition_failures;
    for (const auto& e : catalog) {
      const CheckResult r = check_sn_decomposition(e.term);
      if (r.verdict == Verdict::Undecided) {
        ++undecided;
        continue;
      }
      ++decided;
      if (r.holds()) {
        ++holds;
      } else {
        fails.push_back({print_term(e.term), e.name, r.detail});
      }
    }
    const SnStatus omega = explore_sn(parse_term("(\\x. x x) (\\x. x x)"), 10);
    const bool omega_ok = is_not_sn(omega) && std::get<NotSN>(omega).cycle.size() == 1;
    verdict(5, fails.empty() && holds == decided && omega_ok && catalog.size() >= 5,
            "SN iff hred and arg are SN",
            std::to_string(holds) + "/" + std::to_string(decided) + " decided (" + std::to_string(undecided) +
                " undecided), catalog " + std::to_string(catalog.size()) + ", omega at fuel 10: " + describe(omega) +
                first(fails));
  }

  // ---- application to a variable
  {
    SuiteConfig cfg;
    cfg.suite = "l5";
    cfg.samples = 1000;
    cfg.seed = kSeed;
    const LemmaReport r = run_suite(cfg);
    verdict(6, r.ok() && r.instances == 1000 && r.stats.undecided == 0, "(M y) is SN with eta(M y) >= eta(M)",
            std::to_string(r.passes) + "/" + std::to_string(r.instances) + ", " + std::to_string(r.stats.undecided) +
                " undecided" + first(r.failures));
  }

  // ---- arg inclusion under substitution
  {
    SuiteConfig cfg;
    cfg.suite = "l3";
    cfg.samples = 1000;
    cfg.seed = kSeed;
    const LemmaReport r = run_suite(cfg);
    verdict(7, r.ok() && r.instances == 1000, "arg(M[x:=N]) within arg(N), {N} and arg(M)[x:=N]",
            std::to_string(r.passes) + "/" + std::to_string(r.instances) + first(r.failures));
  }

  // ---- same-type substitution, measures recomputed by the oracle
  {
    const auto insts = sample_same_type_instances(500, 7, 2, kSeed);
    std::size_t holds = 0, with_mu = 0, reproduced = 0;
    std::string problem;
    for (const auto& s : insts) {
      with_mu += s.mu_images;
      const SubstitutionCheck r = check_same_type_substitution(s.instance, s.sigma);
      if (r.holds()) {
        ++holds;
      } else if (problem.empty()) {
        problem = print_term(s.instance.term) + " " + print_substitution(s.sigma) + ": " + r.detail;
      }
      const auto* q = std::get_if<MeasureQuadruple>(&r.measure);
      const auto want = oracle::measure(s.instance.context, s.sigma, s.instance.term);
      if (q && std::array{q->lgt_sigma, q->eta_m, q->cxty_m, q->eta_sigma} == want &&
          measure_quadruple(s.instance.context, s.sigma, s.instance.term) == r.measure) {
        ++reproduced;
      } else if (problem.empty()) {
        problem = "measure of " + print_term(s.instance.term) + " not reproduced";
      }
    }
    verdict(8, insts.size() == 500 && holds == 500 && reproduced == 500 && with_mu >= 50,
            "M[s] is SN for same-type s",
            std::to_string(holds) + "/" + std::to_string(insts.size()) + " SN, " + std::to_string(with_mu) +
                " with mu images, " + std::to_string(reproduced) + " measures reproduced" +
                (problem.empty() ? "" : "; first: " + problem));
  }

  // ---- mu-rule template
  {
    const auto redexes = sample_mu_redexes(100, 7, kSeed);
    std::size_t ok = 0;
    std::string problem;
    for (const Term& r : redexes) {
      const std::string why = mu_shape_problem(r);
      if (why.empty()) {
        ++ok;
      } else if (problem.empty()) {
        problem = print_term(r) + ": " + why;
      }
    }
    verdict(9, ok == 100 && redexes.size() == 100, "mu-contraction matches mu y. P[x := \\z. y (z Q)]",
            std::to_string(ok) + "/" + std::to_string(redexes.size()) + (problem.empty() ? "" : "; first: " + problem));
  }

  // ---- parse . print
  {
    std::uint64_t ok = tally.round_trips;
    std::vector<LemmaFailure> fails = tally.round_trip_failures;
    for (const auto& e : catalog) {
      if (parse_term(print_term(e.term)) == e.term) {
        ++ok;
      } else {
        fails.push_back({print_term(e.term), e.name, "round trip changed the term"});
      }
    }
    verdict(10, fails.empty() && ok == tally.terms + catalog.size(), "parse(print(M)) == M",
            std::to_string(ok) + "/" + std::to_string(tally.terms + catalog.size()) + first(fails));
  }

  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
