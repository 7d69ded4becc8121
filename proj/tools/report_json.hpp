#pragma once

#include <nlohmann/json.hpp>

#include "lmu/lemma_lab.hpp"

namespace lmu::cli {

inline nlohmann::json report_to_json(const LemmaReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) failures.push_back({{"term", f.term}, {"context", f.context}, {"reason", f.reason}});
  return {
      {"suite", r.suite},
      {"config", {{"max_cxty", r.max_cxty}, {"lgt_bound", r.lgt_bound}, {"fuel", r.fuel}, {"seed", r.seed}}},
      {"instances", r.instances},
      {"passes", r.passes},
      {"failures", failures},
      {"stats",
       {{"max_eta", r.stats.max_eta},
        {"max_graph_nodes", r.stats.max_graph_nodes},
        {"wall_ms", r.stats.wall_ms},
        {"undecided", r.stats.undecided}}},
  };
}

}  // namespace lmu::cli
