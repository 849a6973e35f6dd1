#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "shtrim/bench.hpp"
#include "shtrim/corpus_gen.hpp"
#include "shtrim/liveness.hpp"
#include "shtrim/parser.hpp"
#include "shtrim/solver.hpp"

using namespace shtrim;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Direct-definition scan oracle per the liveness definition: X is live at
// body position i when X is a head variable or occurs both at-or-before and
// at-or-after i.
VarList live_oracle(const Clause& c, int i) {
  VarList live = vars_of(c.head);
  int n = static_cast<int>(c.body.size());
  for (VarId v = 0; v < c.var_names.size(); ++v) {
    bool before = false, after = false;
    for (int j = 1; j <= n; ++j) {
      if (contains(vars_of(c.body[j - 1]), v)) {
        if (j <= i) before = true;
        if (j >= i) after = true;
      }
    }
    if (before && after) live.push_back(v);
  }
  sort_unique(live);
  return live;
}

// The live set at rest (after the dead-variable trim at position i).
VarList live_at_rest_oracle(const Clause& c, int i) {
  VarList live = vars_of(c.head);
  int n = static_cast<int>(c.body.size());
  for (VarId v = 0; v < c.var_names.size(); ++v) {
    bool before = false, strictly_after = false;
    for (int j = 1; j <= n; ++j) {
      if (contains(vars_of(c.body[j - 1]), v)) {
        if (j <= i) before = true;
        if (j > i) strictly_after = true;
      }
    }
    if (before && strictly_after) live.push_back(v);
  }
  sort_unique(live);
  return live;
}

VarId name_id(const Clause& c, const std::string& n) {
  for (size_t i = 0; i < c.var_names.size(); ++i)
    if (c.var_names[i] == n) return static_cast<VarId>(i);
  FAIL("no such variable ", n);
  return invalid_var;
}

VarList ids(const Clause& c, std::initializer_list<const char*> names) {
  VarList out;
  for (const char* n : names) out.push_back(name_id(c, n));
  sort_unique(out);
  return out;
}

}  // namespace

TEST_CASE("live_vars returns the variables becoming alive") {
  Program prog = parse_program(slurp("corpus/qplan.pl"));
  const Clause& c = prog.predicates.at(PredKey{"qplan", 4})[0];
  // Before the first literal with only head variables live, numbervars
  // introduces I.
  VarList live = ids(c, {"X0", "P0", "X", "P"});
  CHECK(live_vars(live, c.body[0]) == ids(c, {"I"}));
  // A literal whose variables are all live adds nothing.
  VarList all_live = unite(live, ids(c, {"I"}));
  CHECK(live_vars(all_live, c.body[0]).empty());
  // Before the functor literal, VA is the only newcomer.
  VarList live7 = ids(c, {"X0", "P0", "X", "P", "N", "P2"});
  CHECK(live_vars(live7, c.body[6]) == ids(c, {"VA"}));
}

TEST_CASE("dead_vars returns exactly the variables with no future use") {
  Program prog = parse_program(slurp("corpus/qplan.pl"));
  const Clause& c = prog.predicates.at(PredKey{"qplan", 4})[0];
  std::span<const Literal> body(c.body);
  // After numbervars(P0,I,N), I has no further occurrence.
  VarList live3 = ids(c, {"X0", "P0", "X", "P", "I", "Vg", "N"});
  CHECK(dead_vars(live3, ids(c, {"X0", "P0", "X", "P"}), body.subspan(3)) == ids(c, {"I"}));
  // Head variables never die even with an empty suffix.
  VarList hv = ids(c, {"X0", "P0", "X", "P"});
  CHECK(dead_vars(hv, hv, body.subspan(c.body.size())).empty());
  // After schedule(L,Vg,P1) both L and Vg are spent.
  VarList live5 = ids(c, {"X0", "P0", "X", "P", "Vg", "N", "L", "Vl", "P1"});
  CHECK(dead_vars(live5, hv, body.subspan(5)) == ids(c, {"L", "Vg"}));
}

TEST_CASE("incremental liveness equals the direct-definition scan") {
  for (const char* file : {"corpus/qplan.pl", "corpus/app.pl", "corpus/mutual.pl"}) {
    Program prog = parse_program(slurp(file));
    for (const auto& [key, clauses] : prog.predicates) {
      for (const Clause& c : clauses) {
        VarList live = vars_of(c.head);
        for (int i = 1; i <= static_cast<int>(c.body.size()); ++i) {
          VarList newly = live_vars(live, c.body[i - 1]);
          live = unite(live, newly);
          CHECK(live == live_oracle(c, i));
          VarList dead = dead_vars(live, vars_of(c.head),
                                   std::span<const Literal>(c.body).subspan(i));
          live = subtract(live, dead);
          CHECK(live == live_at_rest_oracle(c, i));
        }
      }
    }
  }
}

TEST_CASE("qplan max live-at-rest is 8, reached after the mark literal") {
  Program prog = parse_program(slurp("corpus/qplan.pl"));
  const Clause& c = prog.predicates.at(PredKey{"qplan", 4})[0];
  size_t max_live = 0;
  int argmax = 0;
  for (int i = 1; i <= static_cast<int>(c.body.size()); ++i) {
    size_t n = live_at_rest_oracle(c, i).size();
    if (n > max_live) {
      max_live = n;
      argmax = i;
    }
  }
  CHECK(max_live == 8);
  CHECK(argmax == 4);
  CHECK(c.env().size() == 12);

  SolverConfig cfg;
  cfg.strategy = Strategy::trim;
  ShareAnalyzer analyzer(prog, cfg);
  AnalysisResult r = analyzer.run();
  CHECK(r.stats.max_live == 8);
  // The worst-case per-point bound drops from 2^12-1 to 2^8-1.
  CHECK(r.stats.max_abs_size <= 255);
}

TEST_CASE("trimming keeps the section-two example success intact") {
  std::string source = slurp("corpus/sec2_example.pl");
  Program prog = parse_program(source);
  SolverConfig classic_cfg;
  SolverConfig trim_cfg;
  trim_cfg.strategy = Strategy::trim;
  trim_cfg.trace_pipeline = true;
  ShareAnalyzer classic(prog, classic_cfg);
  ShareAnalyzer trim(prog, trim_cfg);
  AnalysisResult a = classic.run();
  AnalysisResult b = trim.run();
  CHECK(a.entries[0].succ_text == "[[B,C]]");
  CHECK(b.entries[0].succ_text == "[[B,C]]");
  // Under trimming the entry starts on the head variables only.
  const PipelineTrace& t = b.traces.begin()->second;
  CHECK(t.entry == "[[X],[Y]]");
  CHECK(t.beta == "[[Y]]");
}

TEST_CASE("empty body leaves entry and live set untouched") {
  AnalysisResult r = [] {
    Program prog = parse_program("p(X,Y).\n:- entry p(A,B) sharing [[A,B]].\n");
    SolverConfig cfg;
    cfg.strategy = Strategy::trim;
    ShareAnalyzer an(prog, cfg);
    return an.run();
  }();
  CHECK(r.entries[0].succ_text == "[[A,B]]");
}

TEST_CASE("classic and trim agree on every corpus program and table entry") {
  for (const char* file : {"corpus/app.pl", "corpus/mutual.pl", "corpus/qplan.pl",
                           "corpus/sec2_example.pl", "corpus/facts.pl"}) {
    std::string source = slurp(file);
    for (const char* domain : {"share", "share-clique"}) {
      RunSettings sc;
      sc.domain = domain;
      RunSettings st;
      st.domain = domain;
      st.mode = "trim";
      RunOutcome a = run_module(source, sc);
      RunOutcome b = run_module(source, st);
      REQUIRE(a.status == "ok");
      REQUIRE(b.status == "ok");
      REQUIRE(a.result.entries.size() == b.result.entries.size());
      for (size_t i = 0; i < a.result.entries.size(); ++i)
        CHECK(a.result.entries[i].succ_share == b.result.entries[i].succ_share);
      REQUIRE(a.result.patterns.size() == b.result.patterns.size());
      for (size_t i = 0; i < a.result.patterns.size(); ++i) {
        CHECK(a.result.patterns[i].key == b.result.patterns[i].key);
        CHECK(a.result.patterns[i].succ_share == b.result.patterns[i].succ_share);
      }
    }
  }
}

TEST_CASE("per-point domains under trimming never exceed the classic env") {
  GenParams params;
  params.seed = 99;
  params.modules = 20;
  for (const std::string& source : generate_corpus(params)) {
    Program prog = parse_program(source);
    size_t max_env = 0;
    for (const auto& [key, clauses] : prog.predicates)
      for (const Clause& c : clauses) max_env = std::max(max_env, c.env().size());
    SolverConfig cfg;
    cfg.strategy = Strategy::trim;
    ShareAnalyzer an(prog, cfg);
    AnalysisResult r = an.run();
    CHECK(r.stats.max_live <= max_env);
  }
}

TEST_CASE("dead-temporary family: constant live set, growing classic size") {
  std::string source = generate_dead_temporary(1, 8);
  Program prog = parse_program(source);
  const Clause& c = prog.predicates.at(PredKey{"p", 2})[0];
  CHECK(c.env().size() == 8 + 2);
  size_t max_live = 0;
  for (int i = 1; i <= static_cast<int>(c.body.size()); ++i)
    max_live = std::max(max_live, live_at_rest_oracle(c, i).size());
  // Each temporary dies at its own literal; only the head pair rests live.
  CHECK(max_live == 2);
  SolverConfig tcfg;
  tcfg.strategy = Strategy::trim;
  ShareAnalyzer tan(prog, tcfg);
  CHECK(tan.run().stats.max_live == max_live);
  // k = 0: classic and trim see identical abstraction sizes.
  std::string flat = generate_dead_temporary(1, 0);
  RunSettings sc, st;
  st.mode = "trim";
  RunOutcome a = run_module(flat, sc);
  RunOutcome b = run_module(flat, st);
  CHECK(a.result.stats.max_abs_size == b.result.stats.max_abs_size);
  // Same seed, same text.
  CHECK(generate_dead_temporary(1, 8) == source);
}
