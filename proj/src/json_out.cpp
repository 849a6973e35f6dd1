#include "shtrim/json_out.hpp"

#include <json.hpp>

namespace shtrim {

std::string result_to_json(const std::string& file, const std::string& domain,
                           const std::string& mode, const std::string& status,
                           const AnalysisResult& result, bool zero_times, bool pretty) {
  nlohmann::ordered_json doc;
  doc["file"] = file;
  doc["domain"] = domain;
  doc["mode"] = mode;
  doc["status"] = status;
  doc["entries"] = nlohmann::ordered_json::array();
  for (const EntryResult& e : result.entries) {
    nlohmann::ordered_json je;
    je["goal"] = e.goal_text;
    je["call"] = e.call_text;
    je["prime"] = e.prime_text;
    je["succ"] = e.succ_text;
    doc["entries"].push_back(std::move(je));
  }
  doc["call_patterns"] = nlohmann::ordered_json::array();
  for (const CallPatternResult& p : result.patterns) {
    nlohmann::ordered_json jp;
    jp["pred"] = p.pred;
    jp["goal"] = p.goal_text;
    jp["call"] = p.call_text;
    jp["succ"] = p.succ_text;
    jp["iterations"] = p.iterations;
    doc["call_patterns"].push_back(std::move(jp));
  }
  nlohmann::ordered_json stats;
  stats["literals_analyzed"] = result.stats.literals;
  stats["fixpoint_iterations"] = result.stats.iterations;
  stats["max_sharing_size"] = result.stats.max_abs_size;
  stats["max_live_vars"] = result.stats.max_live;
  stats["elapsed_ms"] = zero_times ? 0.0 : result.stats.elapsed_ms;
  doc["stats"] = std::move(stats);
  return pretty ? doc.dump(2) : doc.dump();
}

std::string transform_report_json(const std::string& file, const TransformResult& result,
                                  bool pretty) {
  nlohmann::ordered_json doc;
  doc["file"] = file;
  doc["clauses"] = nlohmann::ordered_json::array();
  for (const ClauseReport& r : result.reports) {
    nlohmann::ordered_json jr;
    jr["pred"] = r.pred;
    jr["clause"] = r.clause_index;
    jr["original_env"] = r.original_env;
    jr["transformed_max_env"] = r.transformed_max_env;
    jr["aux_predicates"] = r.aux_count;
    jr["optimal"] = r.optimal;
    jr["plan"] = r.shape;
    doc["clauses"].push_back(std::move(jr));
  }
  return pretty ? doc.dump(2) : doc.dump();
}

}  // namespace shtrim
