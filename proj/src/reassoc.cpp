#include "shtrim/reassoc.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace shtrim {

namespace {

VarList segment_vars(int start, int end, const Clause& c) {
  VarList out;
  for (int i = start; i <= end; ++i) out = unite(out, vars_of(c.body[i - 1]));
  return out;
}

struct Best {
  size_t cost = 0;
  size_t aux = 0;
  size_t nodes = 0;
  std::string shape;
  PlanNode node;

  bool better_than(const Best& o) const {
    if (cost != o.cost) return cost < o.cost;
    if (aux != o.aux) return aux < o.aux;
    if (nodes != o.nodes) return nodes < o.nodes;
    return shape < o.shape;
  }
};

class PlanSearch {
public:
  PlanSearch(const Clause& c, uint64_t budget, bool sum_objective)
      : clause_(c), budget_(budget), sum_(sum_objective) {
    head_vars_ = vars_of(c.head);
    n_ = static_cast<int>(c.body.size());
  }

  PartitionPlan run() {
    Best root = best_root();
    PartitionPlan plan;
    plan.root = root.node;
    plan.max_env = root.cost;
    plan.aux_count = root.aux;
    plan.optimal = !exhausted_;
    plan.shape = root.shape;
    return plan;
  }

private:
  size_t combine(size_t a, size_t b) const { return sum_ ? a + b : std::max(a, b); }

  VarList interface(int s, int e) {
    auto key = std::make_pair(s, e);
    auto it = iface_.find(key);
    if (it != iface_.end()) return it->second;
    VarList inside = segment_vars(s, e, clause_);
    VarList outside = head_vars_;
    for (int i = 1; i <= n_; ++i) {
      if (i >= s && i <= e) continue;
      outside = unite(outside, vars_of(clause_.body[i - 1]));
    }
    VarList out = intersect(inside, outside);
    iface_.emplace(key, out);
    return out;
  }

  bool spend() {
    if (steps_ >= budget_) {
      exhausted_ = true;
      return false;
    }
    ++steps_;
    return true;
  }

  // Env contribution of one child range to its parent clause body.
  VarList contrib(int s, int e) {
    if (s == e) return vars_of(clause_.body[s - 1]);
    return interface(s, e);
  }

  // Minimal fold of segment [s..e] as an auxiliary predicate (|seg| >= 2):
  // either a leaf clause holding the raw literals, or a split into >= 2
  // consecutive parts.
  Best best_fold(int s, int e) {
    auto key = std::make_pair(s, e);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Best leaf;
    leaf.cost = segment_vars(s, e, clause_).size();
    leaf.aux = 1;
    leaf.nodes = 1;
    leaf.node = PlanNode{s, e, {}};
    leaf.shape = "[" + std::to_string(s) + "-" + std::to_string(e) + "]";
    Best best = leaf;
    enumerate_splits(s, e, interface(s, e), /*allow_single=*/false,
                     /*extra_aux=*/1, [&](Best cand) {
                       if (cand.better_than(best)) best = std::move(cand);
                     });
    memo_.emplace(key, best);
    return best;
  }

  Best best_root() {
    Best leaf;
    leaf.cost = clause_.env().size();
    leaf.aux = 0;
    leaf.nodes = 1;
    leaf.node = PlanNode{1, n_, {}};
    leaf.shape = "[1-" + std::to_string(n_) + "]";
    if (n_ < 2) return leaf;
    Best best = leaf;
    enumerate_splits(1, n_, head_vars_, /*allow_single=*/true,
                     /*extra_aux=*/0, [&](Best cand) {
                       if (cand.better_than(best)) best = std::move(cand);
                     });
    return best;
  }

  // Enumerates consecutive compositions of [s..e]. `base_vars` seeds the
  // parent clause environment (interface for folded nodes, head variables at
  // the root). Cut masks: bit i set = boundary after literal s+i.
  template <class Fn>
  void enumerate_splits(int s, int e, const VarList& base_vars, bool allow_single,
                        size_t extra_aux, Fn&& consider) {
    int len = e - s + 1;
    uint64_t masks = uint64_t{1} << (len - 1);
    for (uint64_t cut = 0; cut < masks; ++cut) {
      bool single = (cut == 0);
      if (single && !allow_single) continue;
      if (!spend()) return;
      std::vector<std::pair<int, int>> parts;
      int ps = s;
      for (int i = 0; i < len - 1; ++i) {
        if (cut & (uint64_t{1} << i)) {
          parts.emplace_back(ps, s + i);
          ps = s + i + 1;
        }
      }
      parts.emplace_back(ps, e);
      // A one-part composition at a non-root node would wrap the segment in
      // itself; only the root may fold its whole body once.
      VarList env = base_vars;
      Best cand;
      cand.aux = extra_aux;
      cand.nodes = 1;
      size_t child_cost = 0;
      std::ostringstream shape;
      shape << '(';
      for (size_t pi = 0; pi < parts.size(); ++pi) {
        auto [cs, ce] = parts[pi];
        env = unite(env, contrib(cs, ce));
        if (pi) shape << ' ';
        if (cs == ce) {
          cand.node.children.push_back(PlanNode{cs, ce, {}});
          cand.nodes += 1;
          shape << cs;
        } else {
          Best sub = best_fold(cs, ce);
          child_cost = sum_ ? child_cost + sub.cost : std::max(child_cost, sub.cost);
          cand.aux += sub.aux;
          cand.nodes += sub.nodes;
          cand.node.children.push_back(sub.node);
          shape << sub.shape;
        }
      }
      shape << ')';
      cand.node.start = s;
      cand.node.end = e;
      cand.cost = combine(env.size(), child_cost);
      cand.shape = shape.str();
      consider(std::move(cand));
    }
  }

  const Clause& clause_;
  uint64_t budget_;
  bool sum_;
  VarList head_vars_;
  int n_ = 0;
  uint64_t steps_ = 0;
  bool exhausted_ = false;
  std::map<std::pair<int, int>, Best> memo_;
  std::map<std::pair<int, int>, VarList> iface_;
};

// Rebuilds a clause over a dense 0..m-1 variable numbering.
Clause renumber_clause(const Term& head, const std::vector<Literal>& body,
                       const std::vector<std::string>& source_names) {
  std::map<VarId, VarId> remap;
  std::vector<std::string> names;
  auto visit = [&](const Term& t, auto&& self) -> void {
    if (t.kind == Term::Kind::var) {
      if (!remap.count(t.var)) {
        remap[t.var] = static_cast<VarId>(names.size());
        names.push_back(source_names.at(t.var));
      }
    } else if (t.kind == Term::Kind::structure) {
      for (const Term& a : t.args) self(a, self);
    }
  };
  visit(head, visit);
  for (const Literal& lit : body) {
    if (lit.kind == Literal::Kind::call) {
      visit(lit.goal, visit);
    } else {
      visit(lit.lhs, visit);
      visit(lit.rhs, visit);
    }
  }
  std::vector<VarId> mapping;
  mapping.resize(source_names.size(), invalid_var);
  for (auto& [from, to] : remap) mapping[from] = to;
  Clause out;
  out.head = instantiate_term(head, mapping);
  int pos = 1;
  for (const Literal& lit : body) {
    if (lit.kind == Literal::Kind::call) {
      out.body.push_back(Literal::make_call(instantiate_term(lit.goal, mapping), pos++));
    } else {
      out.body.push_back(Literal::make_unify(instantiate_term(lit.lhs, mapping),
                                             instantiate_term(lit.rhs, mapping), pos++));
    }
  }
  out.var_names = std::move(names);
  return out;
}

// Interface variables in first-occurrence order inside the segment.
std::vector<VarId> ordered_interface(int s, int e, const Clause& c) {
  VarList iface = interface_vars(s, e, c);
  std::vector<VarId> out;
  for (int i = s; i <= e; ++i) {
    VarList raw;
    if (c.body[i - 1].kind == Literal::Kind::call) {
      collect_vars(c.body[i - 1].goal, raw);
    } else {
      collect_vars(c.body[i - 1].lhs, raw);
      collect_vars(c.body[i - 1].rhs, raw);
    }
    for (VarId v : raw) {
      if (contains(iface, v) && std::find(out.begin(), out.end(), v) == out.end())
        out.push_back(v);
    }
  }
  return out;
}

struct FoldContext {
  const Clause& clause;
  const std::string& base;
  const std::vector<PredKey>& taken;

  std::string aux_name(const std::string& path, int arity) const {
    std::string name = base + "_aux" + path;
    auto clash = [&](const std::string& n) {
      for (const PredKey& k : taken)
        if (k.name == n && k.arity == arity) return true;
      return false;
    };
    while (clash(name)) name += "x";
    return name;
  }
};

// Builds the body literals of `node` and appends the clauses of folded
// children to `acc` in preorder (each child before its own descendants).
std::vector<Literal> node_body(FoldContext& ctx, const PlanNode& node, const std::string& path,
                               std::vector<std::pair<PredKey, Clause>>& acc) {
  std::vector<Literal> body;
  if (node.is_leaf()) {
    for (int i = node.start; i <= node.end; ++i) body.push_back(ctx.clause.body[i - 1]);
  } else {
    int folded = 0;
    for (const PlanNode& child : node.children) {
      if (child.length() == 1) {
        body.push_back(ctx.clause.body[child.start - 1]);
        continue;
      }
      ++folded;
      std::string child_path = path + std::to_string(folded);
      std::vector<VarId> args = ordered_interface(child.start, child.end, ctx.clause);
      std::string name = ctx.aux_name(child_path, static_cast<int>(args.size()));
      std::vector<Term> call_args, head_args;
      for (VarId v : args) {
        call_args.push_back(Term::make_var(v));
        head_args.push_back(Term::make_var(v));
      }
      Term call = call_args.empty() ? Term::make_atom(name)
                                    : Term::make_struct(name, std::move(call_args));
      body.push_back(Literal::make_call(std::move(call), 0));
      Term head = head_args.empty() ? Term::make_atom(name)
                                    : Term::make_struct(name, std::move(head_args));
      std::vector<std::pair<PredKey, Clause>> sub;
      std::vector<Literal> child_body = node_body(ctx, child, child_path, sub);
      Clause c = renumber_clause(head, child_body, ctx.clause.var_names);
      acc.emplace_back(pred_key_of(c.head), std::move(c));
      for (auto& kv : sub) acc.push_back(std::move(kv));
    }
  }
  int pos = 1;
  for (Literal& l : body) l.position = pos++;
  return body;
}

}  // namespace

VarList interface_vars(int start, int end, const Clause& c) {
  VarList inside = segment_vars(start, end, c);
  VarList outside = vars_of(c.head);
  for (int i = 1; i <= static_cast<int>(c.body.size()); ++i) {
    if (i >= start && i <= end) continue;
    outside = unite(outside, vars_of(c.body[i - 1]));
  }
  return intersect(inside, outside);
}

PartitionPlan optimal_plan(const Clause& c, uint64_t budget) {
  return optimal_plan_objective(c, budget, false);
}

PartitionPlan optimal_plan_objective(const Clause& c, uint64_t budget, bool sum_objective) {
  if (c.body.empty()) {
    PartitionPlan plan;
    plan.root = PlanNode{1, 0, {}};
    plan.max_env = c.env().size();
    plan.shape = "[]";
    return plan;
  }
  PlanSearch search(c, budget, sum_objective);
  return search.run();
}

std::vector<std::pair<PredKey, Clause>> fold(const Clause& c, const PredKey& pred,
                                             const PlanNode& root, const std::string& base_name,
                                             const std::vector<PredKey>& taken) {
  std::vector<std::pair<PredKey, Clause>> out;
  if (root.is_leaf()) {
    out.emplace_back(pred, c);
    return out;
  }
  FoldContext ctx{c, base_name, taken};
  std::vector<std::pair<PredKey, Clause>> aux;
  std::vector<Literal> body = node_body(ctx, root, "", aux);
  out.emplace_back(pred, renumber_clause(c.head, body, c.var_names));
  for (auto& kv : aux) out.push_back(std::move(kv));
  return out;
}

TransformResult transform_program(const Program& p, uint64_t budget) {
  TransformResult result;
  std::vector<PredKey> taken = p.order;
  for (const PredKey& key : p.order) {
    const std::vector<Clause>& clauses = p.predicates.at(key);
    bool multi = clauses.size() > 1;
    std::vector<Clause> rewritten;
    std::vector<std::pair<PredKey, Clause>> aux;
    for (size_t ci = 0; ci < clauses.size(); ++ci) {
      const Clause& c = clauses[ci];
      if (c.body.size() < 2) {
        rewritten.push_back(c);
        continue;
      }
      PartitionPlan plan = optimal_plan(c, budget);
      std::string base = key.name;
      if (multi) base += "_c" + std::to_string(ci + 1);
      auto folded = fold(c, key, plan.root, base, taken);
      rewritten.push_back(folded.front().second);
      for (size_t i = 1; i < folded.size(); ++i) {
        taken.push_back(folded[i].first);
        aux.push_back(std::move(folded[i]));
      }
      ClauseReport report;
      report.pred = key.str();
      report.clause_index = static_cast<int>(ci);
      report.original_env = c.env().size();
      report.transformed_max_env = plan.max_env;
      report.aux_count = plan.aux_count;
      report.optimal = plan.optimal;
      report.shape = plan.shape;
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
  result.program.entries = p.entries;
  return result;
}

}  // namespace shtrim
