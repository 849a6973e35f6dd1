#include <doctest.h>

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "shtrim/bench.hpp"
#include "shtrim/corpus_gen.hpp"
#include "shtrim/parser.hpp"
#include "shtrim/printer.hpp"
#include "shtrim/reassoc.hpp"

using namespace shtrim;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
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

// Exhaustive enumeration oracle over recursive consecutive partition trees:
// min over all trees of the max clause environment, computed directly from
// variable sets (independent of the DP in optimal_plan).
struct PlanOracle {
  const Clause& c;
  VarList hv;

  explicit PlanOracle(const Clause& clause) : c(clause), hv(vars_of(clause.head)) {}

  VarList seg_vars(int s, int e) const {
    VarList out;
    for (int i = s; i <= e; ++i) out = unite(out, vars_of(c.body[i - 1]));
    return out;
  }

  VarList iface(int s, int e) const {
    VarList outside = hv;
    for (int i = 1; i <= static_cast<int>(c.body.size()); ++i)
      if (i < s || i > e) outside = unite(outside, vars_of(c.body[i - 1]));
    return intersect(seg_vars(s, e), outside);
  }

  // Minimal max-env of folding [s..e] into an aux predicate.
  size_t best_fold(int s, int e) const {
    size_t best = seg_vars(s, e).size();  // leaf clause
    int len = e - s + 1;
    for (uint64_t cut = 1; cut < (uint64_t{1} << (len - 1)); ++cut) {
      best = std::min(best, split_cost(s, e, cut, iface(s, e)));
    }
    return best;
  }

  size_t split_cost(int s, int e, uint64_t cut, const VarList& base) const {
    std::vector<std::pair<int, int>> parts;
    int ps = s;
    for (int i = 0; i < e - s; ++i) {
      if (cut & (uint64_t{1} << i)) {
        parts.emplace_back(ps, s + i);
        ps = s + i + 1;
      }
    }
    parts.emplace_back(ps, e);
    VarList env = base;
    size_t worst = 0;
    for (auto [a, b] : parts) {
      if (a == b) {
        env = unite(env, vars_of(c.body[a - 1]));
      } else {
        env = unite(env, iface(a, b));
        worst = std::max(worst, best_fold(a, b));
      }
    }
    return std::max(env.size(), worst);
  }

  size_t best_root() const {
    size_t best = c.env().size();  // unchanged clause
    int n = static_cast<int>(c.body.size());
    if (n < 2) return best;
    for (uint64_t cut = 0; cut < (uint64_t{1} << (n - 1)); ++cut) {
      best = std::min(best, split_cost(1, n, cut, hv));
    }
    return best;
  }
};

size_t recomputed_max_env(const Program& p) {
  size_t out = 0;
  for (const auto& [key, clauses] : p.predicates)
    for (const Clause& c : clauses) out = std::max(out, c.env().size());
  return out;
}

}  // namespace

TEST_CASE("interface variables exclude segment-local existentials") {
  Program prog = parse_program(slurp("corpus/qplan.pl"));
  const Clause& c = prog.predicates.at(PredKey{"qplan", 4})[0];
  CHECK(interface_vars(1, 3, c) == ids(c, {"P0", "X0", "Vg", "N"}));
  CHECK(interface_vars(4, 6, c) == ids(c, {"P0", "Vg", "P2"}));
  // The whole body's interface is vars(head) ∩ vars(body).
  VarList body_vars;
  for (const Literal& lit : c.body) body_vars = unite(body_vars, vars_of(lit));
  CHECK(interface_vars(1, static_cast<int>(c.body.size()), c) ==
        intersect(vars_of(c.head), body_vars));
}

TEST_CASE("the flat three-way qplan partition yields the published aux sizes") {
  Program prog = parse_program(slurp("corpus/qplan.pl"));
  const Clause& c = prog.predicates.at(PredKey{"qplan", 4})[0];
  PlanNode root;
  root.start = 1;
  root.end = 9;
  root.children = {PlanNode{1, 3, {}}, PlanNode{4, 6, {}}, PlanNode{7, 9, {}}};
  auto folded = fold(c, PredKey{"qplan", 4}, root, "qplan", prog.order);
  REQUIRE(folded.size() == 4);  // rewritten original + three auxiliaries
  CHECK(folded[1].second.env().size() == 5);
  CHECK(folded[2].second.env().size() == 6);
  CHECK(folded[3].second.env().size() == 6);
  CHECK(folded[1].first.arity == 4);
  CHECK(folded[2].first.arity == 3);
  CHECK(folded[3].first.arity == 5);
}

TEST_CASE("the nested reference plan folds into eight clauses within env six") {
  Program prog = parse_program(slurp("corpus/qplan.pl"));
  const Clause& c = prog.predicates.at(PredKey{"qplan", 4})[0];
  // ((((1 2) 3) ((4 (5 6)))) 7) (8 9) nested exactly as the reference
  // transformation: root children [1..7] and [8..9]; [1..7] splits into
  // [1..6] and literal 7; [1..6] into [1..3] and [4..6]; [1..3] into [1..2]
  // and literal 3; [4..6] into literal 4 and [5..6].
  PlanNode n12{1, 2, {}};
  PlanNode n123{1, 3, {n12, PlanNode{3, 3, {}}}};
  PlanNode n56{5, 6, {}};
  PlanNode n456{4, 6, {PlanNode{4, 4, {}}, n56}};
  PlanNode n16{1, 6, {n123, n456}};
  PlanNode n17{1, 7, {n16, PlanNode{7, 7, {}}}};
  PlanNode n89{8, 9, {}};
  PlanNode root{1, 9, {n17, n89}};
  auto folded = fold(c, PredKey{"qplan", 4}, root, "qplan", prog.order);
  CHECK(folded.size() == 8);
  size_t max_env = 0;
  for (const auto& [key, clause] : folded) max_env = std::max(max_env, clause.env().size());
  CHECK(max_env == 6);
  // Path digits count folded children, so the nested child of the [4..6]
  // split keeps the reference naming style.
  std::set<std::string> names;
  for (const auto& [key, clause] : folded) names.insert(key.name);
  CHECK(names.count("qplan_aux1"));
  CHECK(names.count("qplan_aux2"));
  CHECK(names.count("qplan_aux11"));
  CHECK(names.count("qplan_aux111"));
  CHECK(names.count("qplan_aux1111"));
  CHECK(names.count("qplan_aux112"));
  CHECK(names.count("qplan_aux1121"));
}

TEST_CASE("optimal_plan reaches max env six for qplan against env twelve") {
  Program prog = parse_program(slurp("corpus/qplan.pl"));
  const Clause& c = prog.predicates.at(PredKey{"qplan", 4})[0];
  CHECK(c.env().size() == 12);
  PartitionPlan plan = optimal_plan(c);
  CHECK(plan.max_env == 6);
  CHECK(plan.optimal);
  PlanOracle oracle(c);
  CHECK(plan.max_env == oracle.best_root());
}

TEST_CASE("single-literal bodies keep the original clause") {
  Program prog = parse_program("p(X,Y) :- q(X,Y,Z).\n");
  const Clause& c = prog.predicates.at(PredKey{"p", 2})[0];
  PartitionPlan plan = optimal_plan(c);
  CHECK(plan.root.is_leaf());
  CHECK(plan.max_env == c.env().size());
  CHECK(plan.aux_count == 0);
}

TEST_CASE("plan cost equals the brute-force minimum on random small bodies") {
  GenParams params;
  params.seed = 1234;
  params.modules = 30;
  params.max_body_len = 4;
  int checked = 0;
  for (const std::string& source : generate_corpus(params)) {
    Program prog = parse_program(source);
    for (const auto& [key, clauses] : prog.predicates) {
      for (const Clause& c : clauses) {
        if (c.body.empty() || c.body.size() > 4) continue;
        PartitionPlan plan = optimal_plan(c);
        PlanOracle oracle(c);
        CHECK(plan.max_env == oracle.best_root());
        ++checked;
      }
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("plans tile the body consecutively without gaps or overlaps") {
  Program prog = parse_program(slurp("corpus/qplan.pl"));
  const Clause& c = prog.predicates.at(PredKey{"qplan", 4})[0];
  PartitionPlan plan = optimal_plan(c);
  std::function<void(const PlanNode&)> walk = [&](const PlanNode& node) {
    if (node.is_leaf()) return;
    int expect = node.start;
    for (const PlanNode& child : node.children) {
      CHECK(child.start == expect);
      expect = child.end + 1;
      walk(child);
    }
    CHECK(expect == node.end + 1);
  };
  walk(plan.root);
}

TEST_CASE("transform_program rewrites qplan and reports sound costs") {
  Program prog = parse_program(slurp("corpus/qplan.pl"));
  TransformResult result = transform_program(prog);
  REQUIRE(result.reports.size() == 1);
  CHECK(result.reports[0].original_env == 12);
  CHECK(result.reports[0].transformed_max_env == 6);
  // Cost soundness: the reported max equals the max over emitted clauses.
  CHECK(recomputed_max_env(result.program) == 6);
  // The emitted text reparses and analyzes to the same entry results.
  std::string text = print_program(result.program);
  Program again = parse_program(text);
  CHECK(recomputed_max_env(again) == 6);
  CHECK(again.entries.size() == prog.entries.size());
  // Every auxiliary predicate is called exactly once.
  std::map<std::string, int> calls;
  for (const auto& [key, clauses] : again.predicates)
    for (const Clause& cl : clauses)
      for (const Literal& lit : cl.body)
        if (lit.kind == Literal::Kind::call && lit.goal.name.find("_aux") != std::string::npos)
          ++calls[pred_key_of(lit.goal).str()];
  for (const auto& [name, count] : calls) CHECK(count == 1);
}

TEST_CASE("facts-only programs transform to themselves") {
  std::string source = slurp("corpus/facts.pl");
  Program prog = parse_program(source);
  TransformResult result = transform_program(prog);
  CHECK(print_program(result.program) == print_program(prog));
  CHECK(result.reports.empty());
}

TEST_CASE("list append stays unchanged: folding cannot beat the identity plan") {
  Program prog = parse_program(slurp("corpus/app.pl"));
  TransformResult result = transform_program(prog);
  CHECK(print_program(result.program) == print_program(prog));
  const Clause& c = prog.predicates.at(PredKey{"app", 3})[1];
  PlanOracle oracle(c);
  CHECK(optimal_plan(c).max_env == oracle.best_root());
  CHECK(optimal_plan(c).max_env == c.env().size());
}

TEST_CASE("budget exhaustion flags the plan as non-optimal") {
  Program prog = parse_program(slurp("corpus/qplan.pl"));
  const Clause& c = prog.predicates.at(PredKey{"qplan", 4})[0];
  PartitionPlan plan = optimal_plan(c, /*budget=*/3);
  CHECK_FALSE(plan.optimal);
  CHECK(plan.max_env >= 6);   // best-found, never better than optimal
  CHECK(plan.max_env <= 12);  // and never worse than the identity plan
}

TEST_CASE("analysis precision is preserved across the transformation") {
  for (const char* file : {"corpus/qplan.pl", "corpus/app.pl", "corpus/mutual.pl",
                           "corpus/sec2_example.pl"}) {
    std::string source = slurp(file);
    RunSettings classic;
    RunSettings reassoc;
    reassoc.reassoc = true;
    RunOutcome a = run_module(source, classic);
    RunOutcome b = run_module(source, reassoc);
    REQUIRE(a.status == "ok");
    REQUIRE(b.status == "ok");
    REQUIRE(a.result.entries.size() == b.result.entries.size());
    for (size_t i = 0; i < a.result.entries.size(); ++i)
      CHECK(a.result.entries[i].succ_share == b.result.entries[i].succ_share);
  }
}
