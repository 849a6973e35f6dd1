#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shtrim/term.hpp"

namespace shtrim {

/// Node of a recursive consecutive partition of a clause body. A leaf keeps
/// its literal range inline; a split distributes the range over children.
/// Children covering one literal stay inline in the parent; larger children
/// are folded into auxiliary predicates.
struct PlanNode {
  int start = 1;  // 1-based, inclusive
  int end = 1;
  std::vector<PlanNode> children;

  bool is_leaf() const { return children.empty(); }
  int length() const { return end - start + 1; }
};

struct PartitionPlan {
  PlanNode root;
  size_t max_env = 0;    // max environment size over all generated clauses
  size_t aux_count = 0;  // auxiliary predicates the plan generates
  bool optimal = true;   // false when the search budget ran out
  std::string shape;
};

constexpr uint64_t default_plan_budget = 4'000'000;

/// vars(segment) restricted to variables visible outside it: the head or
/// any literal beyond the segment. Variables local to the segment are
/// existential and excluded.
VarList interface_vars(int start, int end, const Clause& c);

/// Minimizes the maximum environment size over the clauses the plan
/// generates; ties prefer fewer auxiliaries, then the canonical (leftmost)
/// shape. Exhaustive memoized search over consecutive compositions within
/// `budget` elementary steps; on exhaustion returns the best plan found with
/// `optimal = false`.
PartitionPlan optimal_plan(const Clause& c, uint64_t budget = default_plan_budget);

/// Applies `sum` objective instead of `max` when set; kept behind a flag.
PartitionPlan optimal_plan_objective(const Clause& c, uint64_t budget, bool sum_objective);

/// Clauses generated by folding `c` along `plan`: the rewritten clause for
/// the original predicate first, auxiliary predicates after, deterministic
/// names `<base>_aux<path>` where the path digits count folded children.
std::vector<std::pair<PredKey, Clause>> fold(const Clause& c, const PredKey& pred,
                                             const PlanNode& root, const std::string& base_name,
                                             const std::vector<PredKey>& taken);

struct ClauseReport {
  std::string pred;
  int clause_index = 0;  // 0-based within the predicate
  size_t original_env = 0;
  size_t transformed_max_env = 0;
  size_t aux_count = 0;
  bool optimal = true;
  std::string shape;
};

struct TransformResult {
  Program program;
  std::vector<ClauseReport> reports;
};

/// Folds every clause with at least two body literals along its optimal
/// plan; entries and predicate signatures are preserved.
TransformResult transform_program(const Program& p, uint64_t budget = default_plan_budget);

}  // namespace shtrim
