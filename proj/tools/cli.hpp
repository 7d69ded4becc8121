#pragma once

// The `lmu` command line. run_cli is separate from main so that tests can
// drive it with string streams.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lmu/lmu.hpp"
#include "report_json.hpp"

namespace lmu::cli {

inline constexpr const char* kSynopsis =
    "usage: lmu <check|reduce|eta|sn|graph|head|lemmas|enumerate|measure|mu-subst|step> [options] (--help for details)";

enum Exit { kOk = 0, kVerdict = 1, kUsage = 2 };

namespace detail {

// An existing file is read; anything else is the expression itself.
inline std::string read_input(const std::string& arg) {
  std::error_code ec;
  if (arg.size() < 4096 && std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream text;
    text << in.rdbuf();
    return text.str();
  }
  return arg;
}

inline void print_parse_error(std::ostream& err, const std::string& text, const ParseError& e) {
  err << "parse error: " << e.message() << " at " << e.span().start_offset << "\n";
  // Caret line only for single-line inputs.
  if (text.find('\n') == std::string::npos) {
    err << "  " << text << "\n  " << std::string(e.span().start_offset, ' ')
        << std::string(std::max<std::size_t>(1, e.span().end_offset - e.span().start_offset), '^') << "\n";
  }
}

inline Strategy parse_strategy(const std::string& s) {
  if (s == "head") return Strategy::Head;
  if (s == "lo") return Strategy::LeftmostOutermost;
  return Strategy::Random;
}

// Redexes of `m` as `<n> <path> <redex>` lines, numbered from 1.
inline void list_redexes(const Term& m, const std::vector<RedexPosition>& ps, std::ostream& out) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Term sub = m;
    for (PathStep s : ps[i]) {
      sub = s == PathStep::AppFun ? sub.fun() : s == PathStep::AppArg ? sub.arg() : sub.body();
    }
    out << "  " << i + 1 << " " << print_path(ps[i]) << " " << print_term(sub) << "\n";
  }
}

inline int step_loop(Term m, std::istream& in, std::ostream& out, std::ostream& err) {
  std::size_t steps = 0;
  while (true) {
    out << "term: " << print_term(m) << "\n";
    const auto ps = redex_positions(m);
    if (ps.empty()) {
      out << "normal form after " << steps << " step" << (steps == 1 ? "" : "s") << "\n";
      return kOk;
    }
    list_redexes(m, ps, out);
    out << "redex> " << std::flush;
    std::string line;
    if (!std::getline(in, line)) {
      out << "\n";
      return kOk;
    }
    std::size_t pick = 0;
    try {
      std::size_t used = 0;
      pick = std::stoul(line, &used);
      if (line.find_first_not_of(" \t\r", used) != std::string::npos) pick = 0;
    } catch (const std::exception&) {
      pick = 0;
    }
    if (pick == 0 || pick > ps.size()) {
      err << "enter a number between 1 and " << ps.size() << "\n";
      continue;
    }
    m = reduce_at(m, ps[pick - 1]);
    ++steps;
  }
}

// "x := N, y := P" (terms may not contain commas, which the syntax never needs).
inline Substitution parse_substitution(const std::string& text) {
  Substitution s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto at = item.find(":=");
    if (at == std::string::npos) throw ParseError({0, text.size()}, "expected 'name := term' in substitution");
    Term lhs = parse_term(item.substr(0, at));
    if (!lhs.is_var()) throw ParseError({0, text.size()}, "left of ':=' must be a variable");
    s.insert_or_assign(lhs.name(), parse_term(item.substr(at + 2)));
  }
  return s;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Type checking, reduction and strong-normalization checks for the simply typed lambda-mu calculus",
               "lmu"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::string input;
  std::string context_text;
  std::size_t fuel = kDefaultFuel;

  auto add_input = [&](CLI::App* c) { c->add_option("input", input, "term, or a file holding one")->required(); };
  auto add_context = [&](CLI::App* c) {
    c->add_option("--context", context_text, "free-variable typings, e.g. \"x:bot, f:bot -> bot\"");
  };
  auto add_fuel = [&](CLI::App* c) { c->add_option("--fuel", fuel, "distinct terms to explore before giving up")->check(CLI::PositiveNumber); };

  auto* check = app.add_subcommand("check", "infer the type of a term");
  add_input(check);
  add_context(check);
  bool explain_flag = false;
  check->add_flag("--explain", explain_flag, "print the typing derivation");

  auto* reduce = app.add_subcommand("reduce", "reduce with a strategy");
  add_input(reduce);
  std::string strategy = "lo";
  std::size_t max_steps = 1000;
  bool trace_flag = false;
  std::uint64_t seed = 0;
  reduce->add_option("--strategy", strategy, "head, lo (leftmost-outermost) or random")
      ->check(CLI::IsMember({"head", "lo", "random"}));
  reduce->add_option("--max-steps", max_steps, "step limit");
  reduce->add_flag("--trace", trace_flag, "print every step");
  reduce->add_option("--seed", seed, "seed for --strategy random");

  auto* eta_cmd = app.add_subcommand("eta", "length of the longest reduction");
  add_input(eta_cmd);
  add_context(eta_cmd);
  add_fuel(eta_cmd);

  auto* sn = app.add_subcommand("sn", "strong normalization verdict");
  add_input(sn);
  add_context(sn);
  add_fuel(sn);

  auto* graph = app.add_subcommand("graph", "reduction graph");
  add_input(graph);
  add_fuel(graph);
  std::string format = "dot";
  graph->add_option("--format", format, "output format")->check(CLI::IsMember({"dot"}));

  auto* head = app.add_subcommand("head", "head form: hred and arg");
  add_input(head);

  auto* lemmas = app.add_subcommand("lemmas", "run a lemma suite");
  std::string suite;
  std::size_t max_size = 7;
  std::size_t lgt_bound = 2;
  std::string json_path;
  std::vector<std::string> contexts;
  std::string catalog_dir;
  std::size_t samples = 0;
  bool free_y = false;
  lemmas->add_option("--suite", suite, "l3, l4, l5, l7, sr or thm8")->required()->check(CLI::IsMember(suite_names()));
  lemmas->add_option("--max-size", max_size, "largest term size (corpus suites), size budget (sampled suites)");
  lemmas->add_option("--lgt-bound", lgt_bound, "largest lgt of binder annotations");
  add_fuel(lemmas);
  lemmas->add_option("--seed", seed, "seed for the sampled suites");
  lemmas->add_option("--json", json_path, "write the report as JSON ('-' for standard output)");
  lemmas->add_option("--context", contexts, "corpus context; repeatable (default: empty and v:bot)");
  lemmas->add_option("--catalog", catalog_dir, "directory of .lm terms added to l4")->check(CLI::ExistingDirectory);
  lemmas->add_option("--samples", samples, "instances for the sampled suites");
  lemmas->add_flag("--free-y", free_y, "l5: let y occur free in M");

  auto* enumerate = app.add_subcommand("enumerate", "list every term of a type up to a size");
  std::string type_text;
  bool types_only = false;
  enumerate->add_option("--type", type_text, "target type");
  enumerate->add_option("--max-size", max_size, "largest term size");
  enumerate->add_option("--lgt-bound", lgt_bound, "largest lgt of binder annotations");
  enumerate->add_flag("--types", types_only, "list the annotation types instead");
  add_context(enumerate);

  auto* measure = app.add_subcommand("measure", "measure quadruple of a substitution instance");
  add_input(measure);
  add_context(measure);
  add_fuel(measure);
  std::string subst_text;
  measure->add_option("--subst", subst_text, "substitution, e.g. \"x := \\u:bot. u\"");

  auto* mu_subst = app.add_subcommand("mu-subst", "the substitution [x := \\u.(x (u y)), ...]");
  std::vector<std::string> vars;
  std::string y_name = "y";
  mu_subst->add_option("--vars", vars, "substituted variables")->delimiter(',');
  mu_subst->add_option("--y", y_name, "the applied variable");

  auto* step = app.add_subcommand("step", "contract redexes chosen interactively");
  add_input(step);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << kSynopsis << "\n";
    return kUsage;
  }

  std::string text;
  try {
    Context g;
    text = context_text;
    g = parse_context(context_text);

    if (app.got_subcommand(enumerate)) {
      if (types_only) {
        for (const Type& t : enumerate_types(lgt_bound)) out << print_type(t) << "\n";
        return kOk;
      }
      if (type_text.empty()) {
        err << "error: enumerate needs --type (or --types)\n" << kSynopsis << "\n";
        return kUsage;
      }
      text = type_text;
      const Type a = parse_type(type_text);
      for (const auto& inst : enumerate_typed_terms(g, a, max_size, lgt_bound)) out << print_term(inst.term) << "\n";
      return kOk;
    }
    if (app.got_subcommand(mu_subst)) {
      out << print_substitution(build_mu_substitution(vars, y_name)) << "\n";
      return kOk;
    }
    if (app.got_subcommand(lemmas)) {
      SuiteConfig cfg;
      cfg.suite = suite;
      cfg.max_cxty = max_size;
      cfg.lgt_bound = lgt_bound;
      cfg.fuel = fuel;
      cfg.seed = seed;
      cfg.samples = samples;
      cfg.free_y = free_y;
      if (!contexts.empty()) {
        cfg.contexts.clear();
        for (const auto& c : contexts) {
          text = c;
          cfg.contexts.push_back(parse_context(c));
        }
      }
      if (!catalog_dir.empty()) cfg.catalog = load_catalog(catalog_dir);
      const LemmaReport rep = run_suite(cfg);
      out << "suite " << rep.suite << ": " << rep.passes << "/" << rep.instances << " passed, "
          << rep.failures.size() << " failed, " << rep.stats.undecided << " undecided; max eta "
          << rep.stats.max_eta << ", max graph nodes " << rep.stats.max_graph_nodes << "\n";
      for (const auto& f : rep.failures) {
        out << "FAIL " << f.term << (f.context.empty() ? "" : "  [" + f.context + "]") << ": " << f.reason << "\n";
      }
      if (json_path == "-") {
        out << report_to_json(rep).dump(2) << "\n";
      } else if (!json_path.empty()) {
        std::ofstream(json_path) << report_to_json(rep).dump(2) << "\n";
      }
      return rep.ok() ? kOk : kVerdict;
    }

    text = detail::read_input(input);
    const Term m = parse_term(text);

    // Typing is checked whenever a context is supplied.
    if (!context_text.empty() && !app.got_subcommand(check)) {
      try {
        infer(g, m);
      } catch (const TypeError& e) {
        err << "type error: " << e.what() << "\n";
        return kVerdict;
      }
    }

    if (app.got_subcommand(check)) {
      try {
        if (explain_flag) {
          out << explain(g, m);
        } else {
          out << print_type(infer(g, m)) << "\n";
        }
      } catch (const TypeError& e) {
        err << "type error: " << e.what() << "\n";
        return kVerdict;
      }
      return kOk;
    }
    if (app.got_subcommand(reduce)) {
      const Trace t = reduce_with_strategy(m, detail::parse_strategy(strategy), max_steps, seed);
      if (trace_flag) out << format_trace(t);
      out << print_term(t.last()) << "\n";
      if (t.truncated) err << "stopped after " << max_steps << " steps\n";
      return kOk;
    }
    if (app.got_subcommand(eta_cmd) || app.got_subcommand(sn)) {
      const SnStatus s = explore_sn(m, fuel);
      if (app.got_subcommand(eta_cmd) && is_sn(s)) {
        out << std::get<StronglyNormalizing>(s).eta << "\n";
      } else {
        out << describe(s) << "\n";
      }
      return is_sn(s) ? kOk : kVerdict;
    }
    if (app.got_subcommand(graph)) {
      const ReductionGraph gr = reduction_graph(m, fuel);
      out << to_dot(gr);
      if (!gr.complete) {
        err << "graph truncated after " << fuel << " nodes\n";
        return kVerdict;
      }
      return kOk;
    }
    if (app.got_subcommand(head)) {
      if (auto r = hred(m)) {
        out << "hred: " << print_term(*r) << "\n";
      } else {
        out << "hred: none (head normal form)\n";
      }
      for (const auto& a : arg(m)) out << "arg: " << print_canonical(a) << "\n";
      return kOk;
    }
    if (app.got_subcommand(measure)) {
      Substitution s;
      if (!subst_text.empty()) {
        text = subst_text;
        s = detail::parse_substitution(subst_text);
      }
      const Measure q = measure_quadruple(g, s, m, fuel);
      if (const auto* mq = std::get_if<MeasureQuadruple>(&q)) {
        out << to_string(*mq) << "\n";
        return kOk;
      }
      out << "Unknown\n";
      return kVerdict;
    }
    if (app.got_subcommand(step)) return detail::step_loop(m, in, out, err);
  } catch (const ParseError& e) {
    detail::print_parse_error(err, text, e);
    return kUsage;
  } catch (const MixedTypes& e) {
    err << e.what() << "\n";
    return kVerdict;
  } catch (const PreconditionViolation& e) {
    err << e.what() << "\n";
    return kVerdict;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << kSynopsis << "\n";
  return kUsage;
}

}  // namespace lmu::cli
