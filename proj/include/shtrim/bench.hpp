#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shtrim/builtins.hpp"
#include "shtrim/solver.hpp"

namespace shtrim {

struct RunSettings {
  std::string domain = "share";  // share | share-clique
  std::string mode = "classic";  // classic | trim
  /// Reassociate (fold clause bodies along optimal plans) before analyzing;
  /// the transformation time is charged to the module total.
  bool reassoc = false;
  int64_t timeout_ms = 300000;  // per module
  size_t max_sharing_sets = size_t{1} << 22;
  uint64_t iteration_guard = 100000;
  BuiltinTable builtins;
  bool record_points = false;
  bool trace_pipeline = false;
  bool topmost_filter_ground = false;

  /// Bench-row mode label: classic | trim | reassoc (reassoc+classic).
  std::string mode_label() const {
    if (reassoc && mode == "classic") return "reassoc";
    if (reassoc) return "reassoc-" + mode;
    return mode;
  }
  static RunSettings with_mode_label(RunSettings base, const std::string& label) {
    if (label == "reassoc") {
      base.mode = "classic";
      base.reassoc = true;
    } else if (label.rfind("reassoc-", 0) == 0) {
      base.mode = label.substr(8);
      base.reassoc = true;
    } else {
      base.mode = label;
      base.reassoc = false;
    }
    return base;
  }
};

struct RunOutcome {
  std::string status;  // ok | timeout | oom-guard | error
  AnalysisResult result;
  double time_ms = 0;  // parse + preprocessing + analysis
  std::string error;
};

/// Parses and analyzes one module under the given settings. The reassoc mode
/// transforms the program first and charges the transformation to the total
/// time. Parse errors are reported through `error` with status "error".
RunOutcome run_module(const std::string& source, const RunSettings& settings);

struct BenchRow {
  std::string module;
  std::string domain;
  std::string mode;
  double time_ms = 0;
  std::string status;
  size_t max_abs_size = 0;
};

struct BenchSummary {
  std::string domain;
  int modules = 0;
  int fail_classic = 0;
  int fail_trim = 0;
  int fail_reassoc = 0;
  /// Mean speed-ups over modules where both compared modes succeeded; 0 when
  /// no pair qualified or times are zeroed.
  double mu_trim = 0;
  double mu_reassoc = 0;
  int pairs_trim = 0;
  int pairs_reassoc = 0;
};

struct BenchMatrix {
  std::vector<BenchRow> rows;          // sorted (module, domain, mode rank)
  std::vector<BenchSummary> summaries; // per domain
};

struct BenchConfig {
  std::vector<std::string> domains{"share", "share-clique"};
  std::vector<std::string> modes{"classic", "trim"};
  RunSettings settings;
  int jobs = 1;
  bool zero_times = false;
};

/// Runs the full module x domain x mode matrix. Cells run in parallel up to
/// `jobs` workers; each cell owns its solver state; failures become rows and
/// never abort the matrix.
BenchMatrix run_bench(const std::vector<std::pair<std::string, std::string>>& modules,
                      const BenchConfig& config);

/// CSV with one row per cell and a trailing '#'-prefixed summary block.
std::string bench_to_csv(const BenchMatrix& matrix, bool zero_times);

/// Recomputes summaries from rows (used both internally and as the
/// CSV-consumer path of cmd_plotdata).
std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows, bool zero_times);

/// Parses the row section of a bench CSV (summary comments are skipped).
std::vector<BenchRow> parse_bench_csv(const std::string& csv);

struct PlotData {
  std::string cactus_csv;
  std::string scatter_csv;
};

/// Cactus: per (domain, mode), ok rows sorted by time ascending, emitted as
/// (index, accumulated time). Scatter: per module with classic and trim both
/// ok, classic time against trim time and log10 speed-up.
PlotData make_plot_data(const std::vector<BenchRow>& rows);

}  // namespace shtrim
