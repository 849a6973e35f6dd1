// Acceptance suite: one criterion per command-line argument (1..9), all of
// them when run bare. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion failed.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include "shtrim/bench.hpp"
#include "shtrim/clique_abs.hpp"
#include "shtrim/corpus_gen.hpp"
#include "shtrim/parser.hpp"
#include "shtrim/printer.hpp"
#include "shtrim/reassoc.hpp"
#include "shtrim/selftest.hpp"
#include "shtrim/solver.hpp"

using namespace shtrim;

namespace {

struct Criterion {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "    failed: " << what << "\n";
    }
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. The worked three-argument example, end to end, exact pipeline stages.
Criterion criterion1() {
  Criterion c;
  auto t0 = std::chrono::steady_clock::now();
  Program prog = parse_program(slurp("corpus/sec2_example.pl"));
  SolverConfig cfg;
  cfg.trace_pipeline = true;
  ShareAnalyzer analyzer(prog, cfg);
  AnalysisResult r = analyzer.run();
  double elapsed = seconds_since(t0);
  c.require(r.entries.size() == 1, "one entry expected");
  if (r.entries.empty()) return c;
  c.require(r.patterns.size() == 1 && r.patterns[0].call_text == "[[_0],[_1]]",
            "Proj = [[A],[B]] (positional [[_0],[_1]]), got " +
                (r.patterns.empty() ? std::string("<none>") : r.patterns[0].call_text));
  if (r.traces.empty()) {
    c.require(false, "pipeline trace missing");
    return c;
  }
  const PipelineTrace& t = r.traces.begin()->second;
  c.require(t.entry == "[[T1],[T2],[X],[Y]]",
            "Entry after augment = [[T1],[T2],[X],[Y]], got " + t.entry);
  // Expected to fail: the stated Exit reference value contradicts the
  // abstract-unification algebra verified exhaustively by criterion 6 (it
  // lacks the {T1,T2} group that T1=[Y|T2] must produce). The assertion is
  // kept as stated rather than weakened.
  c.require(t.exit == "[[T1,T2,Y],[T1,Y],[T2,Y]]",
            "Exit = [[T1,T2,Y],[T1,Y],[T2,Y]] as stated, got " + t.exit);
  c.require(r.entries[0].prime_text == "[[B]]",
            "Prime = [[B]], got " + r.entries[0].prime_text);
  c.require(r.entries[0].succ_text == "[[B,C]]",
            "Succ = [[B,C]], got " + r.entries[0].succ_text);
  c.require(elapsed < 1.0, "under one second");
  return c;
}

// 2. The list-append trace: fixpoint success, prime, success.
Criterion criterion2() {
  Criterion c;
  auto t0 = std::chrono::steady_clock::now();
  Program prog = parse_program(slurp("corpus/app.pl"));
  SolverConfig cfg;
  ShareAnalyzer analyzer(prog, cfg);
  AnalysisResult r = analyzer.run();
  double elapsed = seconds_since(t0);
  bool inner = false;
  for (const CallPatternResult& p : r.patterns) {
    if (p.goal_text == "app(_0,_1,_2)" && p.call_text == "[[_1],[_2]]") {
      inner = true;
      c.require(p.succ_text == "[[_1,_2]]",
                "fixpoint success = [[L0,L1]] (positional [[_1,_2]]), got " + p.succ_text);
    }
  }
  c.require(inner, "recursive call pattern app(_0,_1,_2) with call [[_1],[_2]] tabled");
  c.require(r.entries.size() == 1, "one entry expected");
  if (!r.entries.empty()) {
    c.require(r.entries[0].prime_text == "[[A,B],[A,B,C],[A,B,C,D],[A,B,D],[C,D]]",
              "Prime exact, got " + r.entries[0].prime_text);
    c.require(r.entries[0].succ_text == "[[A,B],[A,B,C],[A,B,C,D,E],[A,B,D,E],[C,D,E]]",
              "Succ exact, got " + r.entries[0].succ_text);
  }
  c.require(elapsed < 1.0, "under one second");
  return c;
}

// 3. Clique compression of the worked example, losslessly inverted.
Criterion criterion3() {
  Criterion c;
  VarList dom{0, 1, 2};  // X Y Z
  ShareAbs a = ShareAbs::make(dom, {{0}, {0, 1}, {1}, {2}});
  CliqueAbs compressed = clique::compress(a);
  CliqueAbs want = CliqueAbs::make(dom, {{0, 1}}, {{2}});
  NameFn nm = [](VarId v) { return std::string(1, "XYZ"[v]); };
  c.require(compressed == want, "compress([[X],[X,Y],[Y],[Z]]) = (cliques=[[X,Y]], "
                                "sharing=[[Z]]), got " +
                                    clique::to_text(compressed, nm));
  c.require(clique::decompress(compressed) == a, "decompress inverts compress exactly");
  return c;
}

// 4. qplan reassociation: max env 6 versus original 12; output re-analyzes.
Criterion criterion4() {
  Criterion c;
  std::string source = slurp("corpus/qplan.pl");
  Program prog = parse_program(source);
  const Clause& clause = prog.predicates.at(PredKey{"qplan", 4})[0];
  c.require(clause.env().size() == 12, "original environment has 12 variables");
  PartitionPlan plan = optimal_plan(clause);
  c.require(plan.max_env == 6, "optimal plan reaches max env 6, got " +
                                   std::to_string(plan.max_env));
  TransformResult transformed = transform_program(prog);
  size_t emitted_max = 0;
  for (const auto& [key, clauses] : transformed.program.predicates)
    for (const Clause& cl : clauses) emitted_max = std::max(emitted_max, cl.env().size());
  c.require(emitted_max == 6, "emitted clauses stay within env 6");
  std::string text = print_program(transformed.program);
  Program again = parse_program(text);  // throws on malformed output
  RunSettings rs;
  rs.timeout_ms = 60000;
  RunOutcome direct = run_module(source, rs);
  RunOutcome reparsed = run_module(text, rs);
  c.require(reparsed.status == "ok", "transformed program analyzes cleanly");
  c.require(direct.status == "ok" && !direct.result.entries.empty() &&
                direct.result.entries[0].succ_share == reparsed.result.entries[0].succ_share,
            "reparsed transformed program preserves the entry success");
  (void)again;
  return c;
}

// 5. Precision preservation over the bundled and generated corpus.
Criterion criterion5() {
  Criterion c;
  std::vector<std::string> sources;
  for (const char* f : {"corpus/sec2_example.pl", "corpus/app.pl", "corpus/qplan.pl",
                        "corpus/mutual.pl", "corpus/facts.pl"})
    sources.push_back(slurp(f));
  GenParams params;
  params.seed = 2026;
  params.modules = 205;
  params.max_body_len = 8;
  params.max_vars_per_clause = 10;
  for (std::string& s : generate_corpus(params)) sources.push_back(std::move(s));
  size_t compared = 0;
  size_t mismatches = 0;
  for (size_t i = 0; i < sources.size(); ++i) {
    RunSettings classic;
    classic.timeout_ms = 60000;
    RunSettings trim = classic;
    trim.mode = "trim";
    RunSettings reassoc = classic;
    reassoc.reassoc = true;
    RunOutcome a = run_module(sources[i], classic);
    RunOutcome b = run_module(sources[i], trim);
    RunOutcome d = run_module(sources[i], reassoc);
    if (a.status != "ok" || b.status != "ok" || d.status != "ok") {
      c.require(false, "module " + std::to_string(i) + " failed to analyze (" + a.status +
                           "/" + b.status + "/" + d.status + ")");
      continue;
    }
    for (size_t e = 0; e < a.result.entries.size(); ++e) {
      ++compared;
      if (!(a.result.entries[e].succ_share == b.result.entries[e].succ_share)) {
        ++mismatches;
        c.require(false, "trim mismatch in module " + std::to_string(i) + " entry " +
                             a.result.entries[e].goal_text);
      }
      if (!(a.result.entries[e].succ_share == d.result.entries[e].succ_share)) {
        ++mismatches;
        c.require(false, "reassoc mismatch in module " + std::to_string(i) + " entry " +
                             a.result.entries[e].goal_text);
      }
    }
  }
  c.require(sources.size() >= 205, "at least 200 generated programs included");
  c.require(compared > 0 && mismatches == 0,
            "100% agreement required, compared " + std::to_string(compared) + " entries");
  c.detail << "    compared " << compared << " entries over " << sources.size()
           << " modules, mismatches " << mismatches << "\n";
  return c;
}

// 6. amgu equals the naive reference, exhaustively.
Criterion criterion6() {
  Criterion c;
  auto t0 = std::chrono::steady_clock::now();
  uint64_t checks = 0;
  std::vector<std::string> failures = amgu_oracle_sweep(4, checks);
  double elapsed = seconds_since(t0);
  for (const std::string& f : failures) c.require(false, f);
  c.require(checks > 6'000'000, "exhaustive sweep ran (" + std::to_string(checks) + ")");
  c.require(elapsed < 300.0, "within five minutes");
  c.detail << "    " << checks << " amgu/reference comparisons in " << std::fixed
           << std::setprecision(1) << elapsed << "s\n";
  return c;
}

// 7. Clique commutation across every implemented operation.
Criterion criterion7() {
  Criterion c;
  uint64_t checks = 0;
  std::vector<std::string> failures = clique_commutation_sweep(4, checks);
  for (const std::string& f : failures) c.require(false, f);
  c.require(checks > 1'000'000, "sweep ran (" + std::to_string(checks) + ")");
  c.detail << "    " << checks << " commutation checks\n";
  return c;
}

// 8. The dead-temporary family: exponential classic growth, flat trimmed
// growth, and a concrete wall-clock win at k = 14. Stated substitute for the
// non-reproducible published wall-clock tables.
Criterion criterion8() {
  Criterion c;
  std::vector<size_t> classic_size, trim_size;
  double classic14 = 0, trim14 = 0;
  for (int k = 4; k <= 14; ++k) {
    std::string source = generate_dead_temporary(1, k);
    RunSettings classic;
    classic.timeout_ms = 540000;
    RunSettings trim = classic;
    trim.mode = "trim";
    auto t0 = std::chrono::steady_clock::now();
    RunOutcome a = run_module(source, classic);
    double ta = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    RunOutcome b = run_module(source, trim);
    double tb = seconds_since(t0);
    if (a.status != "ok" || b.status != "ok") {
      c.require(false, "k=" + std::to_string(k) + " failed (" + a.status + "/" + b.status + ")");
      continue;
    }
    classic_size.push_back(a.result.stats.max_abs_size);
    trim_size.push_back(b.result.stats.max_abs_size);
    if (k == 14) {
      classic14 = ta;
      trim14 = tb;
    }
  }
  if (classic_size.size() == 11) {
    for (size_t i = 0; i < trim_size.size(); ++i)
      c.require(trim_size[i] == trim_size[0], "trim max size constant in k");
    for (size_t i = 1; i < classic_size.size(); ++i) {
      double ratio = double(classic_size[i]) / double(classic_size[i - 1]);
      c.require(ratio > 1.6 && ratio < 2.6,
                "classic growth factor ~2 at k=" + std::to_string(4 + i) + ", got " +
                    std::to_string(ratio));
    }
    c.require(classic_size.back() >= (size_t{1} << 13),
              "classic max size at k=14 reaches 2^13");
    double speedup = trim14 > 0 ? classic14 / trim14 : 0;
    c.require(speedup > 5.0,
              "classic/trim wall-clock ratio at k=14 exceeds 5x, got " +
                  std::to_string(speedup));
    c.detail << "    classic sizes:";
    for (size_t s : classic_size) c.detail << ' ' << s;
    c.detail << " | trim sizes:";
    for (size_t s : trim_size) c.detail << ' ' << s;
    c.detail << " | k=14 classic " << std::fixed << std::setprecision(2) << classic14
             << "s vs trim " << trim14 << "s\n";
  } else {
    c.require(false, "family did not complete");
  }
  return c;
}

// 9. Plot data: independent prefix sums match; scatter excludes pairs that
// did not both succeed.
Criterion criterion9() {
  Criterion c;
  std::vector<std::pair<std::string, std::string>> modules = {
      {"app", slurp("corpus/app.pl")},
      {"mutual", slurp("corpus/mutual.pl")},
      {"qplan", slurp("corpus/qplan.pl")},
      {"sec2", slurp("corpus/sec2_example.pl")},
  };
  BenchConfig config;
  config.settings.timeout_ms = 120000;
  config.jobs = 2;
  BenchMatrix matrix = run_bench(modules, config);
  std::string csv = bench_to_csv(matrix, false);
  std::vector<BenchRow> rows = parse_bench_csv(csv);
  PlotData data = make_plot_data(rows);
  // Independent recomputation of every cactus series.
  std::ostringstream want;
  want << "domain,mode,index,accumulated_time_ms\n";
  for (const char* domain : {"share", "share-clique"}) {
    for (const char* mode : {"classic", "trim"}) {
      std::vector<const BenchRow*> series;
      for (const BenchRow& r : rows)
        if (r.domain == domain && r.mode == mode && r.status == "ok") series.push_back(&r);
      std::sort(series.begin(), series.end(), [](const BenchRow* a, const BenchRow* b) {
        if (a->time_ms != b->time_ms) return a->time_ms < b->time_ms;
        return a->module < b->module;
      });
      double acc = 0;
      int i = 0;
      for (const BenchRow* r : series) {
        acc += r->time_ms;
        want << domain << ',' << mode << ',' << ++i << ',' << std::fixed
             << std::setprecision(3) << acc << '\n';
      }
    }
  }
  c.require(data.cactus_csv == want.str(), "cactus prefix sums match the emitted CSV exactly");
  // Force one non-mutually-ok module and confirm it is excluded.
  std::vector<BenchRow> with_fail = rows;
  for (BenchRow& r : with_fail)
    if (r.module == "qplan" && r.domain == "share" && r.mode == "trim") r.status = "timeout";
  PlotData filtered = make_plot_data(with_fail);
  bool qplan_in_share_scatter = false;
  std::istringstream sc(filtered.scatter_csv);
  std::string line;
  while (std::getline(sc, line))
    if (line.rfind("share,qplan", 0) == 0) qplan_in_share_scatter = true;
  c.require(!qplan_in_share_scatter, "scatter drops modules without both modes ok");
  c.require(filtered.scatter_csv.find("share-clique,qplan") != std::string::npos,
            "unaffected domain keeps the module");
  return c;
}

const char* kDescriptions[10] = {
    "",
    "three-argument worked example pipeline, exact stages",
    "list-append fixpoint trace: success, prime, succ",
    "clique compression of the worked example and its inverse",
    "qplan reassociation reaches max env 6 from 12 and re-analyzes",
    "precision preserved: classic vs trim vs reassoc on 200+ programs",
    "amgu equals the naive reference exhaustively (<= 4 vars)",
    "clique operations commute with the plain domain (<= 4 vars)",
    "dead-temporary family: exponential classic vs flat trim, >5x at k=14",
    "plot data: exact prefix sums, scatter excludes failed pairs",
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  if (wanted.empty())
    for (int i = 1; i <= 9; ++i) wanted.push_back(i);
  bool all_ok = true;
  for (int n : wanted) {
    Criterion c;
    try {
      switch (n) {
        case 1: c = criterion1(); break;
        case 2: c = criterion2(); break;
        case 3: c = criterion3(); break;
        case 4: c = criterion4(); break;
        case 5: c = criterion5(); break;
        case 6: c = criterion6(); break;
        case 7: c = criterion7(); break;
        case 8: c = criterion8(); break;
        case 9: c = criterion9(); break;
        default:
          std::cerr << "unknown criterion " << n << "\n";
          return 2;
      }
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail << "    exception: " << e.what() << "\n";
    }
    std::cout << "C" << n << " " << (c.pass ? "PASS" : "FAIL") << " - " << kDescriptions[n]
              << "\n"
              << c.detail.str();
    all_ok = all_ok && c.pass;
  }
  return all_ok ? 0 : 1;
}
