#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shtrim/bench.hpp"
#include "shtrim/corpus_gen.hpp"
#include "shtrim/json_out.hpp"
#include "shtrim/printer.hpp"
#include "shtrim/reassoc.hpp"
#include "shtrim/selftest.hpp"

namespace fs = std::filesystem;
using namespace shtrim;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_parse_error = 2;
constexpr int exit_timeout = 3;
constexpr int exit_guard = 4;
constexpr int exit_selftest = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct CommonOpts {
  std::string domain = "share";
  std::string mode = "classic";
  bool reassoc = false;
  int64_t timeout_ms = 300000;
  size_t max_sets = size_t{1} << 22;
  uint64_t iter_guard = 100000;
  std::string builtins_path;
  std::string out_path;
  bool no_times = false;
  std::string entry_spec;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--domain", o.domain, "Abstract domain")
      ->check(CLI::IsMember({"share", "share-clique"}));
  cmd->add_option("--mode", o.mode, "Analysis strategy")
      ->check(CLI::IsMember({"classic", "trim"}));
  cmd->add_flag("--reassoc", o.reassoc, "Fold clause bodies along optimal plans first");
  cmd->add_option("--timeout-ms", o.timeout_ms, "Per-module timeout in milliseconds");
  cmd->add_option("--max-sets", o.max_sets, "Abstraction size ceiling (memory guard)");
  cmd->add_option("--iter-guard", o.iter_guard, "Fixpoint iteration guard per call pattern");
  cmd->add_option("--builtins", o.builtins_path, "JSON table of grounding builtin summaries");
  cmd->add_option("--out", o.out_path, "Output file (default stdout)");
  cmd->add_flag("--no-times", o.no_times, "Zero time fields for golden comparisons");
}

RunSettings to_settings(const CommonOpts& o) {
  RunSettings s;
  s.domain = o.domain;
  s.mode = o.mode;
  s.reassoc = o.reassoc;
  s.timeout_ms = o.timeout_ms;
  s.max_sharing_sets = o.max_sets;
  s.iteration_guard = o.iter_guard;
  if (!o.builtins_path.empty())
    s.builtins = BuiltinTable::load_json(read_file(o.builtins_path));
  return s;
}

// "p/3" -> adds a topmost entry for p with 3 distinct fresh variables.
void add_entry_spec(Program& prog, const std::string& spec) {
  auto slash = spec.rfind('/');
  if (slash == std::string::npos)
    throw std::runtime_error("--entry expects name/arity, got " + spec);
  std::string name = spec.substr(0, slash);
  int arity = std::stoi(spec.substr(slash + 1));
  Entry e;
  std::vector<Term> args;
  for (int i = 0; i < arity; ++i) {
    args.push_back(Term::make_var(static_cast<VarId>(i)));
    e.var_names.push_back("A" + std::to_string(i + 1));
  }
  e.goal = args.empty() ? Term::make_atom(name) : Term::make_struct(name, std::move(args));
  prog.entries.push_back(std::move(e));
}

int cmd_analyze(const std::vector<std::string>& files, const CommonOpts& opts) {
  RunSettings settings = to_settings(opts);
  settings.record_points = true;
  std::ostringstream out;
  bool any_parse_error = false, any_timeout = false, any_guard = false;
  for (const std::string& file : files) {
    std::string source = read_file(file);
    RunOutcome outcome;
    if (!opts.entry_spec.empty()) {
      // Entry injection needs the parsed program; reparse through the
      // printer so run_module sees the extended source.
      try {
        Program prog = parse_program(source);
        add_entry_spec(prog, opts.entry_spec);
        source = print_program(prog);
      } catch (const parse_error& pe) {
        outcome.status = "error";
        outcome.error = pe.what();
      }
    }
    if (outcome.status.empty()) outcome = run_module(source, settings);
    if (outcome.status == "error") {
      any_parse_error = true;
      std::cerr << file << ": " << outcome.error << "\n";
    } else if (outcome.status == "timeout") {
      any_timeout = true;
    } else if (outcome.status == "oom-guard") {
      any_guard = true;
    }
    out << result_to_json(file, opts.domain,
                          settings.reassoc ? settings.mode_label() : opts.mode, outcome.status,
                          outcome.result, opts.no_times)
        << "\n";
  }
  write_output(opts.out_path, out.str());
  if (any_parse_error) return exit_parse_error;
  if (any_timeout) return exit_timeout;
  if (any_guard) return exit_guard;
  return exit_ok;
}

int cmd_transform(const std::string& file, const std::string& out_path,
                  const std::string& report_path, uint64_t budget, bool sum_objective) {
  std::string source = read_file(file);
  Program prog;
  try {
    prog = parse_program(source);
  } catch (const parse_error& pe) {
    std::cerr << file << ": " << pe.what() << "\n";
    return exit_parse_error;
  }
  TransformResult result;
  if (sum_objective) {
    // Same pipeline with the sum objective; reuses the per-clause planner.
    result.program.entries = prog.entries;
    std::vector<PredKey> taken = prog.order;
    for (const PredKey& key : prog.order) {
      const auto& clauses = prog.predicates.at(key);
      bool multi = clauses.size() > 1;
      std::vector<Clause> rewritten;
      std::vector<std::pair<PredKey, Clause>> aux;
      for (size_t ci = 0; ci < clauses.size(); ++ci) {
        const Clause& c = clauses[ci];
        if (c.body.size() < 2) {
          rewritten.push_back(c);
          continue;
        }
        PartitionPlan plan = optimal_plan_objective(c, budget, true);
        std::string base = key.name;
        if (multi) base += "_c" + std::to_string(ci + 1);
        auto folded = fold(c, key, plan.root, base, taken);
        rewritten.push_back(folded.front().second);
        for (size_t i = 1; i < folded.size(); ++i) {
          taken.push_back(folded[i].first);
          aux.push_back(std::move(folded[i]));
        }
        ClauseReport report{key.str(), static_cast<int>(ci), c.env().size(), plan.max_env,
                            plan.aux_count, plan.optimal, plan.shape};
        result.reports.push_back(std::move(report));
      }
      result.program.order.push_back(key);
      result.program.predicates[key] = std::move(rewritten);
      for (auto& [akey, aclause] : aux) {
        if (result.program.predicates.find(akey) == result.program.predicates.end())
          result.program.order.push_back(akey);
        result.program.predicates[akey].push_back(std::move(aclause));
      }
    }
  } else {
    result = transform_program(prog, budget);
  }
  write_output(out_path, print_program(result.program));
  if (!report_path.empty()) write_output(report_path, transform_report_json(file, result) + "\n");
  return exit_ok;
}

int cmd_bench_main(const std::string& dir, const std::vector<std::string>& domains,
                   const std::vector<std::string>& modes, const CommonOpts& opts, int jobs) {
  std::vector<std::pair<std::string, std::string>> modules;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".pl") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) modules.emplace_back(f.stem().string(), read_file(f.string()));
  BenchConfig config;
  config.domains = domains;
  config.modes = modes;
  config.settings = to_settings(opts);
  config.jobs = jobs;
  config.zero_times = opts.no_times;
  BenchMatrix matrix = run_bench(modules, config);
  write_output(opts.out_path, bench_to_csv(matrix, opts.no_times));
  return exit_ok;
}

int cmd_plotdata(const std::string& csv_path, const std::string& cactus_path,
                 const std::string& scatter_path) {
  std::vector<BenchRow> rows = parse_bench_csv(read_file(csv_path));
  PlotData data = make_plot_data(rows);
  write_output(cactus_path, data.cactus_csv);
  write_output(scatter_path, data.scatter_csv);
  return exit_ok;
}

int cmd_gen_corpus(const std::string& out_dir, const GenParams& params, int dead_min,
                   int dead_max) {
  fs::create_directories(out_dir);
  std::vector<std::string> modules = generate_corpus(params);
  for (size_t i = 0; i < modules.size(); ++i) {
    std::ostringstream name;
    name << out_dir << "/gen_" << std::setw(3) << std::setfill('0') << i << ".pl";
    write_output(name.str(), modules[i]);
  }
  for (int k = dead_min; k > 0 && k <= dead_max; ++k) {
    std::ostringstream name;
    name << out_dir << "/dead_" << std::setw(2) << std::setfill('0') << k << ".pl";
    write_output(name.str(), generate_dead_temporary(params.seed, k));
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-sharing analyzer for a Horn-clause subset: goal-dependent "
               "top-down analysis with classic, trimming and reassociation modes"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Analyze modules and emit JSON results");
  std::vector<std::string> analyze_files;
  CommonOpts analyze_opts;
  analyze->add_option("files", analyze_files, "Input .pl modules")->required();
  add_common(analyze, analyze_opts);
  analyze->add_option("--entry", analyze_opts.entry_spec,
                      "Add a topmost entry for name/arity");

  // transform
  auto* transform = app.add_subcommand("transform", "Reassociate clause bodies");
  std::string tr_file, tr_out, tr_report;
  uint64_t tr_budget = default_plan_budget;
  bool tr_sum = false;
  transform->add_option("file", tr_file, "Input .pl module")->required();
  transform->add_option("--out", tr_out, "Transformed program output (default stdout)");
  transform->add_option("--report", tr_report, "JSON cost report output");
  transform->add_option("--budget", tr_budget, "Plan search budget");
  transform->add_flag("--sum-objective", tr_sum, "Minimize summed environment sizes");

  // bench
  auto* bench = app.add_subcommand("bench", "Run the benchmark matrix over a corpus directory");
  std::string bench_dir;
  std::vector<std::string> bench_domains{"share", "share-clique"};
  std::vector<std::string> bench_modes{"classic", "trim"};
  CommonOpts bench_opts;
  int bench_jobs = 1;
  bench->add_option("dir", bench_dir, "Corpus directory of .pl modules")->required();
  bench->add_option("--domains", bench_domains, "Domains to run")->delimiter(',');
  bench->add_option("--modes", bench_modes, "Modes to run (classic,trim,reassoc)")
      ->delimiter(',');
  bench->add_option("--jobs", bench_jobs, "Parallel workers");
  add_common(bench, bench_opts);

  // plotdata
  auto* plotdata = app.add_subcommand("plotdata", "Derive cactus/scatter CSVs from a bench CSV");
  std::string plot_csv, plot_cactus = "cactus.csv", plot_scatter = "scatter.csv";
  plotdata->add_option("csv", plot_csv, "Bench CSV input")->required();
  plotdata->add_option("--cactus", plot_cactus, "Cactus output CSV");
  plotdata->add_option("--scatter", plot_scatter, "Scatter output CSV");

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "Generate deterministic benchmark programs");
  std::string gen_dir;
  GenParams gen_params;
  int dead_min = 0, dead_max = 0;
  gen->add_option("dir", gen_dir, "Output directory")->required();
  gen->add_option("--seed", gen_params.seed, "PRNG seed");
  gen->add_option("--modules", gen_params.modules, "Number of random modules");
  gen->add_option("--preds", gen_params.predicates_per_module, "Predicates per module");
  gen->add_option("--max-body", gen_params.max_body_len, "Max body literals");
  gen->add_option("--max-arity", gen_params.max_arity, "Max predicate arity");
  gen->add_option("--max-vars", gen_params.max_vars_per_clause, "Max variables per clause");
  gen->add_option("--reuse", gen_params.reuse_percent, "Variable reuse rate (percent)");
  gen->add_option("--dead-temp-min", dead_min, "Smallest dead-temporary chain length");
  gen->add_option("--dead-temp-max", dead_max, "Largest dead-temporary chain length");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Run oracle and golden self-checks");
  std::string st_corpus = "corpus", st_mutate;
  bool st_quick = false;
  selftest->add_option("--corpus", st_corpus, "Bundled corpus directory");
  selftest->add_option("--mutate", st_mutate, "Corrupt one harness op (extend|amgu)")
      ->check(CLI::IsMember({"extend", "amgu"}));
  selftest->add_flag("--quick", st_quick, "Smaller enumerations");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(analyze_files, analyze_opts);
    if (transform->parsed()) return cmd_transform(tr_file, tr_out, tr_report, tr_budget, tr_sum);
    if (bench->parsed())
      return cmd_bench_main(bench_dir, bench_domains, bench_modes, bench_opts, bench_jobs);
    if (plotdata->parsed()) return cmd_plotdata(plot_csv, plot_cactus, plot_scatter);
    if (gen->parsed()) return cmd_gen_corpus(gen_dir, gen_params, dead_min, dead_max);
    if (selftest->parsed()) {
      SelftestOptions options;
      options.corpus_dir = st_corpus;
      options.mutate = st_mutate;
      options.quick = st_quick;
      SelftestReport report = run_selftest(options);
      std::cout << report.summary() << "\n";
      for (const std::string& f : report.failures) std::cout << "  " << f << "\n";
      return report.ok ? exit_ok : exit_selftest;
    }
  } catch (const parse_error& pe) {
    std::cerr << pe.what() << "\n";
    return exit_parse_error;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return exit_ok;
}
