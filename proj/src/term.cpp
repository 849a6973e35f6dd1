#include "shtrim/term.hpp"

#include <algorithm>

namespace shtrim {

bool term_equal(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::var: return a.var == b.var;
    case Term::Kind::atom: return a.name == b.name;
    case Term::Kind::integer: return a.value == b.value;
    case Term::Kind::structure:
      if (a.name != b.name || a.args.size() != b.args.size()) return false;
      for (size_t i = 0; i < a.args.size(); ++i)
        if (!term_equal(a.args[i], b.args[i])) return false;
      return true;
  }
  return false;
}

void collect_vars(const Term& t, VarList& out) {
  switch (t.kind) {
    case Term::Kind::var: out.push_back(t.var); break;
    case Term::Kind::structure:
      for (const Term& a : t.args) collect_vars(a, out);
      break;
    default: break;
  }
}

VarList vars_of(const Term& t) {
  VarList out;
  collect_vars(t, out);
  sort_unique(out);
  return out;
}

std::vector<VarId> vars_in_order(const Term& t) {
  VarList raw;
  collect_vars(t, raw);
  std::vector<VarId> out;
  for (VarId v : raw) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

VarList vars_of(const Literal& lit) {
  VarList out;
  if (lit.kind == Literal::Kind::call) {
    collect_vars(lit.goal, out);
  } else {
    collect_vars(lit.lhs, out);
    collect_vars(lit.rhs, out);
  }
  sort_unique(out);
  return out;
}

VarList Clause::env() const {
  VarList out = vars_of(head);
  for (const Literal& lit : body) {
    VarList lv = vars_of(lit);
    out = unite(out, lv);
  }
  return out;
}

PredKey pred_key_of(const Term& callable) {
  return PredKey{callable.name, callable.arity()};
}

VarId FreshVars::fresh(const std::string& display_name) {
  names_.push_back(display_name);
  return static_cast<VarId>(names_.size() - 1);
}

namespace {

Term rename_term(const Term& t, const std::vector<VarId>& mapping) {
  switch (t.kind) {
    case Term::Kind::var: return Term::make_var(mapping.at(t.var));
    case Term::Kind::structure: {
      std::vector<Term> args;
      args.reserve(t.args.size());
      for (const Term& a : t.args) args.push_back(rename_term(a, mapping));
      return Term::make_struct(t.name, std::move(args));
    }
    default: return t;
  }
}

}  // namespace

ClauseInstance rename_apart(const Clause& c, FreshVars& fresh, bool suffix_names) {
  std::vector<VarId> mapping(c.var_names.size(), invalid_var);
  std::string suffix;
  if (suffix_names) suffix = "_r" + std::to_string(fresh.count());
  ClauseInstance inst;
  for (size_t i = 0; i < c.var_names.size(); ++i) {
    mapping[i] = fresh.fresh(c.var_names[i] + suffix);
    inst.variables.push_back(mapping[i]);
  }
  inst.head = rename_term(c.head, mapping);
  for (const Literal& lit : c.body) {
    if (lit.kind == Literal::Kind::call) {
      inst.body.push_back(Literal::make_call(rename_term(lit.goal, mapping), lit.position));
    } else {
      inst.body.push_back(Literal::make_unify(rename_term(lit.lhs, mapping),
                                              rename_term(lit.rhs, mapping), lit.position));
    }
  }
  sort_unique(inst.variables);
  return inst;
}

Term instantiate_term(const Term& t, const std::vector<VarId>& mapping) {
  return rename_term(t, mapping);
}

}  // namespace shtrim
