#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "lmu/canonical.hpp"
#include "lmu/reduction.hpp"
#include "lmu/rewrite.hpp"
#include "lmu/syntax.hpp"
#include "lmu/typing.hpp"

namespace lmu {

inline constexpr std::size_t kDefaultFuel = 100000;

struct StronglyNormalizing {
  std::size_t eta;
  std::size_t graph_nodes;

  friend bool operator==(const StronglyNormalizing&, const StronglyNormalizing&) = default;
};
/// `cycle[i+1]` is a one-step reduct of `cycle[i]`, and `cycle[0]` of the last.
struct NotSN {
  std::vector<CanonicalTerm> cycle;
};
struct Unknown {
  std::size_t nodes_visited;

  friend bool operator==(const Unknown&, const Unknown&) = default;
};

using SnStatus = std::variant<StronglyNormalizing, NotSN, Unknown>;
using EtaValue = std::variant<std::size_t, NotSN, Unknown>;

inline bool is_sn(const SnStatus& s) { return std::holds_alternative<StronglyNormalizing>(s); }
inline bool is_not_sn(const SnStatus& s) { return std::holds_alternative<NotSN>(s); }

/// Depth-first exploration of reduction graphs over canonical codes, with a
/// memo of eta values keyed by code.
///
/// Eta is invariant under injective renaming of free variables, so the memo
/// may be shared between roots whose free indices mean different names.
/// Codes no longer than `keep_len` stay memoized across calls; longer ones
/// are dropped at the start of the next call, so the reducts of the last
/// root can still be looked up with known().
///
/// Besides `fuel`, a call gives up with Unknown once the codes it holds add
/// up to `max_words`: terms that keep growing get longer at every step, and
/// a depth-first path through them costs quadratic memory long before the
/// node count runs out.
class SnEngine {
 public:
  struct Options {
    std::size_t fuel = kDefaultFuel;
    std::size_t keep_len = 0;
    std::size_t max_words = std::size_t{1} << 25;
  };

  struct Result {
    enum class Kind { SN, NotSN, Unknown } kind = Kind::SN;
    std::size_t eta = 0;
    std::size_t visited = 0;  // distinct nodes first seen during this call
    std::vector<code::Code> cycle;
  };

  /// Called once for each node with at least one reduct, when its eta is
  /// known. `reducts` is deduplicated; their etas are available via known().
  using Observer = std::function<void(const code::Code& node, std::size_t eta, std::span<const code::Code> reducts)>;

  SnEngine() : SnEngine(Options{}) {}
  explicit SnEngine(Options options) : options_(options) {}

  void set_observer(Observer observer) { observer_ = std::move(observer); }
  const Options& options() const { return options_; }

  std::optional<std::size_t> known(const code::Code& c) const {
    if (!code::has_redex(c)) return 0;
    auto it = memo_.find(c);
    if (it == memo_.end() || it->second == kOnStack) return std::nullopt;
    return it->second;
  }

  std::size_t memo_size() const { return memo_.size(); }
  void clear() {
    memo_ = {};
    transient_.clear();
  }
  void release_transient() {
    for (const auto& c : transient_) memo_.erase(c);
    transient_.clear();
  }

  static std::vector<code::Code> reducts(code::View c) {
    std::vector<code::Code> out;
    for (std::size_t site : code::redex_sites(c)) out.push_back(code::contract_at(c, site));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Result explore(const code::Code& root) {
    release_transient();
    Result res;
    if (auto k = known(root)) {
      res.eta = *k;
      return res;
    }
    std::vector<Frame> stack;
    std::size_t words = 0;
    auto enter = [&](const code::Code& c) {
      memo_.insert_or_assign(c, kOnStack);
      ++res.visited;
      stack.push_back({c, reducts(c)});
      words += c.size();
      for (const auto& r : stack.back().reducts) words += r.size();
    };
    auto abandon = [&] {
      for (const Frame& f : stack) memo_.erase(f.code);
      release_transient();
    };

    enter(root);
    while (true) {
      Frame& top = stack.back();
      if (top.next < top.reducts.size()) {
        const code::Code& r = top.reducts[top.next++];
        auto it = memo_.find(r);
        if (it != memo_.end()) {
          if (it->second == kOnStack) {
            res.kind = Result::Kind::NotSN;
            auto from = std::find_if(stack.begin(), stack.end(), [&](const Frame& f) { return f.code == r; });
            for (; from != stack.end(); ++from) res.cycle.push_back(from->code);
            abandon();
            return res;
          }
          top.best = std::max(top.best, it->second + 1);
          continue;
        }
        if (res.visited >= options_.fuel || words >= options_.max_words) {
          res.kind = Result::Kind::Unknown;
          abandon();
          return res;
        }
        if (!code::has_redex(r)) {
          // Normal forms are recorded so that `visited` counts graph nodes.
          ++res.visited;
          words += r.size();
          memo_.emplace(r, 0);
          if (r.size() > options_.keep_len) transient_.push_back(r);
          top.best = std::max<std::size_t>(top.best, 1);
          continue;
        }
        enter(r);
        continue;
      }

      const std::size_t eta = top.best;
      memo_.insert_or_assign(top.code, eta);
      if (observer_ && !top.reducts.empty()) observer_(top.code, eta, top.reducts);
      if (top.code.size() > options_.keep_len) transient_.push_back(top.code);
      stack.pop_back();
      if (stack.empty()) {
        res.eta = eta;
        break;
      }
      stack.back().best = std::max(stack.back().best, eta + 1);
    }
    return res;
  }

 private:
  static constexpr std::size_t kOnStack = std::numeric_limits<std::size_t>::max();

  struct Frame {
    code::Code code;
    std::vector<code::Code> reducts;
    std::size_t next = 0;
    std::size_t best = 0;
  };

  Options options_;
  Observer observer_;
  std::unordered_map<code::Code, std::size_t> memo_;
  std::vector<code::Code> transient_;
};

/// Explicit reduction graph over alpha-classes.
struct ReductionGraph {
  std::set<CanonicalTerm> nodes;
  std::set<std::pair<CanonicalTerm, CanonicalTerm>> edges;
  CanonicalTerm root;
  bool complete = false;
};

/// Breadth-first exploration from M. Stops with complete = false once more
/// than `fuel` nodes would be needed.
inline ReductionGraph reduction_graph(const Term& m, std::size_t fuel = kDefaultFuel) {
  const CanonicalTerm root = canonicalize(m);
  const auto& names = root.free_names;
  ReductionGraph g;
  g.root = root;
  std::unordered_map<code::Code, CanonicalTerm> seen;
  std::deque<code::Code> queue;
  seen.emplace(root.code, root);
  g.nodes.insert(root);
  queue.push_back(root.code);
  while (!queue.empty()) {
    const code::Code c = std::move(queue.front());
    queue.pop_front();
    const CanonicalTerm& from = seen.at(c);
    for (auto& r : SnEngine::reducts(c)) {
      auto it = seen.find(r);
      if (it == seen.end()) {
        if (seen.size() >= fuel) return g;
        it = seen.emplace(r, normalize_free(r, names)).first;
        g.nodes.insert(it->second);
        queue.push_back(r);
      }
      g.edges.emplace(from, it->second);
    }
  }
  g.complete = true;
  return g;
}

/// SN verdict by depth-first search with cycle detection. Growing divergent
/// terms without a cycle end as Unknown once `fuel` distinct nodes are seen.
inline SnStatus explore_sn(const Term& m, std::size_t fuel = kDefaultFuel) {
  const CanonicalTerm root = canonicalize(m);
  SnEngine engine({fuel, 0});
  auto res = engine.explore(root.code);
  switch (res.kind) {
    case SnEngine::Result::Kind::SN: return StronglyNormalizing{res.eta, std::max<std::size_t>(res.visited, 1)};
    case SnEngine::Result::Kind::NotSN: {
      NotSN out;
      for (const auto& c : res.cycle) out.cycle.push_back(normalize_free(c, root.free_names));
      return out;
    }
    case SnEngine::Result::Kind::Unknown: return Unknown{res.visited};
  }
  return Unknown{res.visited};
}

/// Length of the longest reduction from M, when M is found to be SN.
inline EtaValue eta(const Term& m, std::size_t fuel = kDefaultFuel) {
  SnStatus s = explore_sn(m, fuel);
  if (auto* sn = std::get_if<StronglyNormalizing>(&s)) return sn->eta;
  if (auto* n = std::get_if<NotSN>(&s)) return std::move(*n);
  return std::get<Unknown>(s);
}

inline std::string describe(const SnStatus& s) {
  if (const auto* sn = std::get_if<StronglyNormalizing>(&s)) {
    return "SN eta=" + std::to_string(sn->eta) + " nodes=" + std::to_string(sn->graph_nodes);
  }
  if (const auto* n = std::get_if<NotSN>(&s)) return "NotSN cycle_length=" + std::to_string(n->cycle.size());
  return "Unknown nodes_visited=" + std::to_string(std::get<Unknown>(s).nodes_visited);
}

inline std::string print_canonical(const CanonicalTerm& c) { return print_term(decode(c)); }

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}
}  // namespace detail

/// Graphviz rendering; nodes and edges sorted by printed form.
inline std::string to_dot(const ReductionGraph& g) {
  std::map<CanonicalTerm, std::string> label;
  for (const auto& n : g.nodes) label.emplace(n, print_canonical(n));
  std::vector<std::string> nodes;
  for (const auto& [n, text] : label) {
    nodes.push_back("  " + detail::dot_quote(text) + (n == g.root ? " [root=true]" : "") + ";\n");
  }
  std::vector<std::string> edges;
  for (const auto& [a, b] : g.edges) {
    edges.push_back("  " + detail::dot_quote(label.at(a)) + " -> " + detail::dot_quote(label.at(b)) + ";\n");
  }
  std::sort(nodes.begin(), nodes.end());
  std::sort(edges.begin(), edges.end());
  std::string out = "digraph reductions {\n";
  for (const auto& n : nodes) out += n;
  for (const auto& e : edges) out += e;
  out += "}\n";
  return out;
}

struct SubjectReductionViolation {
  CanonicalTerm from;
  CanonicalTerm to;
  std::string reason;
};

struct SubjectReductionReport {
  Type root_type = Type::bot();
  std::size_t nodes = 0;
  std::size_t edges = 0;
  bool complete = false;  // every reachable term was checked within the bound
  std::vector<SubjectReductionViolation> violations;
};

/// Checks that every term reachable from M in at most `steps` steps (up to
/// alpha) has the type of M under `g`. Throws the root's TypeError.
inline SubjectReductionReport check_subject_reduction(const Context& g, const Term& m, std::size_t steps) {
  SubjectReductionReport rep;
  rep.root_type = infer(g, m);
  const CanonicalTerm root = canonicalize(m);
  std::map<CanonicalTerm, std::size_t> depth{{root, 0}};
  std::deque<CanonicalTerm> queue{root};
  rep.complete = true;
  while (!queue.empty()) {
    CanonicalTerm c = std::move(queue.front());
    queue.pop_front();
    const std::size_t d = depth.at(c);
    const auto next = one_step_reducts(decode(c));
    if (d == steps) {
      if (!next.empty()) rep.complete = false;
      continue;
    }
    for (const auto& r : next) {
      ++rep.edges;
      if (auto t = try_infer(g, decode(r)); !t || *t != rep.root_type) {
        std::string why;
        try {
          why = "reduct has type " + print_type(infer(g, decode(r)));
        } catch (const TypeError& e) {
          why = e.what();
        }
        rep.violations.push_back({c, r, why});
      }
      if (depth.emplace(r, d + 1).second) queue.push_back(r);
    }
  }
  rep.nodes = depth.size();
  return rep;
}

}  // namespace lmu
