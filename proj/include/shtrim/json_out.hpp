#pragma once

#include <string>

#include "shtrim/reassoc.hpp"
#include "shtrim/solver.hpp"

namespace shtrim {

/// Analysis result as a deterministic JSON document: per entry the success
/// abstraction, per call pattern the call/success pair, plus statistics.
/// `zero_times` replaces wall-clock figures with 0 for golden comparisons.
std::string result_to_json(const std::string& file, const std::string& domain,
                           const std::string& mode, const std::string& status,
                           const AnalysisResult& result, bool zero_times,
                           bool pretty = true);

/// Cost report for a program transformation.
std::string transform_report_json(const std::string& file, const TransformResult& result,
                                  bool pretty = true);

}  // namespace shtrim
