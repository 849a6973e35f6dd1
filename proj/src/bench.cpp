#include "shtrim/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "shtrim/reassoc.hpp"

namespace shtrim {

namespace {

int mode_rank(const std::string& mode) {
  if (mode == "classic") return 0;
  if (mode == "trim") return 1;
  return 2;
}

template <class Ops>
RunOutcome run_with_domain(const Program& program, const RunSettings& settings) {
  SolverConfig cfg;
  cfg.strategy = settings.mode == "trim" ? Strategy::trim : Strategy::classic;
  cfg.builtins = settings.builtins;
  cfg.max_sharing_sets = settings.max_sharing_sets;
  cfg.iteration_guard = settings.iteration_guard;
  cfg.record_points = settings.record_points;
  cfg.trace_pipeline = settings.trace_pipeline;
  cfg.topmost_filter_ground = settings.topmost_filter_ground;
  // A non-positive budget is an already-expired deadline.
  cfg.deadline = std::chrono::steady_clock::now() +
                 std::chrono::milliseconds(std::max<int64_t>(settings.timeout_ms, 0));
  Analyzer<Ops> analyzer(program, std::move(cfg));
  RunOutcome out;
  try {
    out.result = analyzer.run();
    out.status = "ok";
  } catch (const analysis_interrupt& intr) {
    out.result.stats = analyzer.stats();  // partial statistics survive
    switch (intr.kind()) {
      case InterruptKind::timeout: out.status = "timeout"; break;
      case InterruptKind::size_guard:
      case InterruptKind::iteration_guard: out.status = "oom-guard"; break;
    }
    out.error = intr.what();
  }
  return out;
}

RunOutcome run_with_domain_dispatch(const Program& program, const RunSettings& settings) {
  if (settings.domain == "share-clique") return run_with_domain<CliqueOps>(program, settings);
  if (settings.domain == "share") return run_with_domain<ShareOps>(program, settings);
  throw std::runtime_error("unknown domain: " + settings.domain);
}

}  // namespace

RunOutcome run_module(const std::string& source, const RunSettings& settings) {
  auto t0 = std::chrono::steady_clock::now();
  RunOutcome out;
  try {
    Program program = parse_program(source);
    if (settings.reassoc) {
      TransformResult transformed = transform_program(program);
      out = run_with_domain_dispatch(transformed.program, settings);
    } else {
      out = run_with_domain_dispatch(program, settings);
    }
  } catch (const parse_error& pe) {
    out.status = "error";
    out.error = pe.what();
  }
  out.time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

BenchMatrix run_bench(const std::vector<std::pair<std::string, std::string>>& modules,
                      const BenchConfig& config) {
  struct Task {
    size_t module;
    std::string domain;
    std::string mode;
  };
  std::vector<Task> tasks;
  for (size_t m = 0; m < modules.size(); ++m)
    for (const std::string& d : config.domains)
      for (const std::string& mo : config.modes) tasks.push_back({m, d, mo});
  std::vector<BenchRow> rows(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      RunSettings s = RunSettings::with_mode_label(config.settings, t.mode);
      s.domain = t.domain;
      s.record_points = false;
      RunOutcome out = run_module(modules[t.module].second, s);
      BenchRow row;
      row.module = modules[t.module].first;
      row.domain = t.domain;
      row.mode = t.mode;
      // Rows carry the precision they print with, so summary means stay
      // recomputable from the emitted CSV.
      row.time_ms = std::round(out.time_ms * 1000.0) / 1000.0;
      row.status = out.status;
      row.max_abs_size = out.result.stats.max_abs_size;
      rows[i] = std::move(row);
    }
  };
  int jobs = std::max(1, config.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    if (a.module != b.module) return a.module < b.module;
    if (a.domain != b.domain) return a.domain < b.domain;
    return mode_rank(a.mode) < mode_rank(b.mode);
  });
  BenchMatrix matrix;
  matrix.rows = std::move(rows);
  matrix.summaries = summarize(matrix.rows, config.zero_times);
  return matrix;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows, bool zero_times) {
  std::map<std::string, std::map<std::string, std::map<std::string, const BenchRow*>>> index;
  for (const BenchRow& r : rows) index[r.domain][r.module][r.mode] = &r;
  std::vector<BenchSummary> out;
  for (const auto& [domain, mods] : index) {
    BenchSummary s;
    s.domain = domain;
    s.modules = static_cast<int>(mods.size());
    double sum_trim = 0, sum_reassoc = 0;
    for (const auto& [mod, by_mode] : mods) {
      auto get = [&](const char* m) -> const BenchRow* {
        auto it = by_mode.find(m);
        return it == by_mode.end() ? nullptr : it->second;
      };
      const BenchRow* classic = get("classic");
      const BenchRow* trim = get("trim");
      const BenchRow* reassoc = get("reassoc");
      if (classic && classic->status != "ok") ++s.fail_classic;
      if (trim && trim->status != "ok") ++s.fail_trim;
      if (reassoc && reassoc->status != "ok") ++s.fail_reassoc;
      if (!zero_times && classic && trim && classic->status == "ok" && trim->status == "ok" &&
          trim->time_ms > 0) {
        sum_trim += classic->time_ms / trim->time_ms;
        ++s.pairs_trim;
      }
      if (!zero_times && classic && reassoc && classic->status == "ok" &&
          reassoc->status == "ok" && reassoc->time_ms > 0) {
        sum_reassoc += classic->time_ms / reassoc->time_ms;
        ++s.pairs_reassoc;
      }
    }
    if (s.pairs_trim) s.mu_trim = sum_trim / s.pairs_trim;
    if (s.pairs_reassoc) s.mu_reassoc = sum_reassoc / s.pairs_reassoc;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::string fmt_ms(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

}  // namespace

std::string bench_to_csv(const BenchMatrix& matrix, bool zero_times) {
  std::ostringstream os;
  os << "module,domain,mode,time_ms,status,max_abs_size\n";
  for (const BenchRow& r : matrix.rows) {
    os << r.module << ',' << r.domain << ',' << r.mode << ','
       << fmt_ms(zero_times ? 0.0 : r.time_ms) << ',' << r.status << ',' << r.max_abs_size
       << '\n';
  }
  for (const BenchSummary& s : matrix.summaries) {
    os << "# summary,domain=" << s.domain << ",modules=" << s.modules << ",FC=" << s.fail_classic
       << ",FT=" << s.fail_trim << ",FR=" << s.fail_reassoc << ",muT=" << fmt_ms(s.mu_trim)
       << ",muR=" << fmt_ms(s.mu_reassoc) << ",pairsT=" << s.pairs_trim
       << ",pairsR=" << s.pairs_reassoc << '\n';
  }
  return os.str();
}

std::vector<BenchRow> parse_bench_csv(const std::string& csv) {
  std::vector<BenchRow> rows;
  std::istringstream is(csv);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (first) {
      first = false;
      if (line.rfind("module,", 0) == 0) continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw std::runtime_error("malformed bench CSV row: " + line);
    BenchRow r;
    r.module = cells[0];
    r.domain = cells[1];
    r.mode = cells[2];
    r.time_ms = std::stod(cells[3]);
    r.status = cells[4];
    r.max_abs_size = static_cast<size_t>(std::stoull(cells[5]));
    rows.push_back(std::move(r));
  }
  return rows;
}

PlotData make_plot_data(const std::vector<BenchRow>& rows) {
  PlotData out;
  std::ostringstream cactus;
  cactus << "domain,mode,index,accumulated_time_ms\n";
  std::map<std::pair<std::string, int>, std::vector<const BenchRow*>> series;
  for (const BenchRow& r : rows) {
    if (r.status != "ok") continue;
    series[{r.domain, mode_rank(r.mode)}].push_back(&r);
  }
  std::map<int, std::string> rank_names;
  for (const BenchRow& r : rows) rank_names[mode_rank(r.mode)] = r.mode;
  for (auto& [key, list] : series) {
    std::sort(list.begin(), list.end(), [](const BenchRow* a, const BenchRow* b) {
      if (a->time_ms != b->time_ms) return a->time_ms < b->time_ms;
      return a->module < b->module;
    });
    double acc = 0;
    int i = 0;
    for (const BenchRow* r : list) {
      acc += r->time_ms;
      cactus << key.first << ',' << rank_names[key.second] << ',' << ++i << ',' << fmt_ms(acc)
             << '\n';
    }
  }
  out.cactus_csv = cactus.str();

  std::ostringstream scatter;
  scatter << "domain,module,classic_time_ms,trim_time_ms,log10_speedup\n";
  std::map<std::string, std::map<std::string, std::map<std::string, const BenchRow*>>> index;
  for (const BenchRow& r : rows) index[r.domain][r.module][r.mode] = &r;
  for (const auto& [domain, mods] : index) {
    for (const auto& [mod, by_mode] : mods) {
      auto ci = by_mode.find("classic");
      auto ti = by_mode.find("trim");
      if (ci == by_mode.end() || ti == by_mode.end()) continue;
      // Modules not analyzed by either approach stay off the plot.
      if (ci->second->status != "ok" || ti->second->status != "ok") continue;
      double c = ci->second->time_ms, t = ti->second->time_ms;
      double spd = (c > 0 && t > 0) ? std::log10(c / t) : 0.0;
      scatter << domain << ',' << mod << ',' << fmt_ms(c) << ',' << fmt_ms(t) << ','
              << fmt_ms(spd) << '\n';
    }
  }
  out.scatter_csv = scatter.str();
  return out;
}

}  // namespace shtrim
