#include "shtrim/corpus_gen.hpp"

#include <random>
#include <sstream>

#include "shtrim/printer.hpp"

namespace shtrim {

namespace {

class ClauseBuilder {
public:
  explicit ClauseBuilder(int max_vars) : max_vars_(max_vars) {}

  VarId var(std::mt19937_64& rng, int reuse_percent) {
    if (!names_.empty() &&
        (static_cast<int>(rng() % 100) < reuse_percent ||
         static_cast<int>(names_.size()) >= max_vars_)) {
      return static_cast<VarId>(rng() % names_.size());
    }
    VarId id = static_cast<VarId>(names_.size());
    names_.push_back("V" + std::to_string(id));
    return id;
  }

  const std::vector<std::string>& names() const { return names_; }

private:
  int max_vars_;
  std::vector<std::string> names_;
};

Term random_arg(std::mt19937_64& rng, ClauseBuilder& vars, int reuse_percent) {
  switch (rng() % 10) {
    case 0: return Term::make_atom("a");
    case 1: return Term::make_int(static_cast<int64_t>(rng() % 100));
    case 2: {
      std::vector<Term> args;
      args.push_back(Term::make_var(vars.var(rng, reuse_percent)));
      return Term::make_struct("f", std::move(args));
    }
    default: return Term::make_var(vars.var(rng, reuse_percent));
  }
}

Term random_unify_rhs(std::mt19937_64& rng, ClauseBuilder& vars, int reuse_percent) {
  switch (rng() % 8) {
    case 0: return Term::make_atom("a");
    case 1: return Term::make_atom("[]");
    case 2: return Term::make_int(static_cast<int64_t>(rng() % 100));
    case 3:
    case 4: {
      std::vector<Term> args;
      size_t n = 1 + rng() % 2;
      for (size_t i = 0; i < n; ++i)
        args.push_back(Term::make_var(vars.var(rng, reuse_percent)));
      return Term::make_struct("g", std::move(args));
    }
    case 5: {
      // [H|T]
      std::vector<Term> cell;
      cell.push_back(Term::make_var(vars.var(rng, reuse_percent)));
      cell.push_back(Term::make_var(vars.var(rng, reuse_percent)));
      return Term::make_struct(".", std::move(cell));
    }
    default: return Term::make_var(vars.var(rng, reuse_percent));
  }
}

}  // namespace

std::vector<std::string> generate_corpus(const GenParams& params) {
  std::vector<std::string> modules;
  for (int m = 0; m < params.modules; ++m) {
    std::mt19937_64 rng(params.seed * 1000003ull + static_cast<uint64_t>(m));
    Program prog;
    std::vector<int> arity(params.predicates_per_module);
    for (int p = 0; p < params.predicates_per_module; ++p)
      arity[p] = 1 + static_cast<int>(rng() % params.max_arity);
    for (int p = 0; p < params.predicates_per_module; ++p) {
      PredKey key{"p" + std::to_string(p), arity[p]};
      int n_clauses = 1 + static_cast<int>(rng() % params.max_clauses_per_pred);
      for (int c = 0; c < n_clauses; ++c) {
        ClauseBuilder vars(params.max_vars_per_clause);
        std::vector<Term> head_args;
        for (int i = 0; i < arity[p]; ++i) {
          // Mostly plain variables; occasionally a structured head argument.
          if (rng() % 10 == 0) {
            head_args.push_back(random_arg(rng, vars, params.reuse_percent));
          } else {
            head_args.push_back(Term::make_var(vars.var(rng, 20)));
          }
        }
        Clause clause;
        clause.head = head_args.empty() ? Term::make_atom(key.name)
                                        : Term::make_struct(key.name, std::move(head_args));
        int body_len = static_cast<int>(rng() % (params.max_body_len + 1));
        if (c == 0 && body_len == 0 && n_clauses == 1) body_len = 1;
        for (int b = 0; b < body_len; ++b) {
          int roll = static_cast<int>(rng() % 100);
          int pos = b + 1;
          if (roll < params.unify_percent) {
            Term lhs = Term::make_var(vars.var(rng, params.reuse_percent));
            Term rhs = random_unify_rhs(rng, vars, params.reuse_percent);
            clause.body.push_back(Literal::make_unify(std::move(lhs), std::move(rhs), pos));
          } else if (roll < params.unify_percent + params.unknown_percent) {
            std::vector<Term> args;
            size_t n = 1 + rng() % 2;
            for (size_t i = 0; i < n; ++i)
              args.push_back(Term::make_var(vars.var(rng, params.reuse_percent)));
            clause.body.push_back(Literal::make_call(
                Term::make_struct("ext" + std::to_string(rng() % 3), std::move(args)), pos));
          } else {
            int callee;
            if (static_cast<int>(rng() % 100) < params.recursive_percent) {
              callee = p;
            } else {
              callee = static_cast<int>(rng() % params.predicates_per_module);
            }
            std::vector<Term> args;
            for (int i = 0; i < arity[callee]; ++i)
              args.push_back(random_arg(rng, vars, params.reuse_percent));
            Term g = args.empty()
                         ? Term::make_atom("p" + std::to_string(callee))
                         : Term::make_struct("p" + std::to_string(callee), std::move(args));
            clause.body.push_back(Literal::make_call(std::move(g), pos));
          }
        }
        clause.var_names = vars.names();
        if (prog.predicates.find(key) == prog.predicates.end()) prog.order.push_back(key);
        prog.predicates[key].push_back(std::move(clause));
      }
    }
    // Entry on the first predicate; explicit sharing half of the time.
    Entry entry;
    std::vector<Term> goal_args;
    std::vector<std::string> names;
    for (int i = 0; i < arity[0]; ++i) {
      goal_args.push_back(Term::make_var(static_cast<VarId>(i)));
      names.push_back("E" + std::to_string(i));
    }
    entry.goal = goal_args.empty() ? Term::make_atom("p0")
                                   : Term::make_struct("p0", std::move(goal_args));
    entry.var_names = names;
    if (rng() % 2 == 0 && !names.empty()) {
      std::vector<std::vector<std::string>> sharing;
      for (const std::string& n : names)
        if (rng() % 4 != 0) sharing.push_back({n});
      if (names.size() >= 2 && rng() % 2 == 0) sharing.push_back({names[0], names[1]});
      entry.sharing = std::move(sharing);
    }
    prog.entries.push_back(std::move(entry));
    modules.push_back(print_program(prog));
  }
  return modules;
}

std::string generate_dead_temporary(uint64_t seed, int k) {
  (void)seed;  // the family is fully determined by k
  Program prog;
  Clause clause;
  std::vector<std::string> names{"A", "B"};
  std::vector<Literal> body;
  for (int i = 0; i < k; ++i) {
    VarId t = static_cast<VarId>(names.size());
    names.push_back("T" + std::to_string(i));
    std::vector<Term> args;
    args.push_back(Term::make_var(0));
    args.push_back(Term::make_var(t));
    body.push_back(Literal::make_call(
        Term::make_struct("step" + std::to_string(i), std::move(args)), i + 1));
  }
  {
    std::vector<Term> args;
    args.push_back(Term::make_var(0));
    args.push_back(Term::make_var(1));
    body.push_back(Literal::make_call(Term::make_struct("finish", std::move(args)), k + 1));
  }
  std::vector<Term> head_args;
  head_args.push_back(Term::make_var(0));
  head_args.push_back(Term::make_var(1));
  clause.head = Term::make_struct("p", std::move(head_args));
  clause.body = std::move(body);
  clause.var_names = std::move(names);
  PredKey key{"p", 2};
  prog.order.push_back(key);
  prog.predicates[key].push_back(std::move(clause));
  Entry entry;
  std::vector<Term> goal_args;
  goal_args.push_back(Term::make_var(0));
  goal_args.push_back(Term::make_var(1));
  entry.goal = Term::make_struct("p", std::move(goal_args));
  entry.var_names = {"X", "Y"};
  prog.entries.push_back(std::move(entry));
  return print_program(prog);
}

}  // namespace shtrim
