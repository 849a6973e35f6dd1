#include "shtrim/unify.hpp"

#include <map>

namespace shtrim {

namespace {

struct UnifyState {
  std::map<VarId, Term> subst;
  std::vector<VarId> bind_order;

  const Term* lookup(VarId v) const {
    auto it = subst.find(v);
    return it == subst.end() ? nullptr : &it->second;
  }

  // Follows variable-to-variable links to the representative.
  Term walk(Term t) const {
    while (t.kind == Term::Kind::var) {
      const Term* b = lookup(t.var);
      if (!b) return t;
      t = *b;
    }
    return t;
  }

  bool occurs(VarId v, const Term& t) const {
    Term w = walk(t);
    switch (w.kind) {
      case Term::Kind::var: return w.var == v;
      case Term::Kind::structure:
        for (const Term& a : w.args)
          if (occurs(v, a)) return true;
        return false;
      default: return false;
    }
  }

  bool bind(VarId v, const Term& t) {
    if (t.kind != Term::Kind::var && occurs(v, t)) return false;
    subst.emplace(v, t);
    bind_order.push_back(v);
    return true;
  }

  bool unify(const Term& a0, const Term& b0) {
    Term a = walk(a0);
    Term b = walk(b0);
    if (a.kind == Term::Kind::var && b.kind == Term::Kind::var) {
      if (a.var == b.var) return true;
      return bind(a.var, b);
    }
    if (a.kind == Term::Kind::var) return bind(a.var, b);
    if (b.kind == Term::Kind::var) return bind(b.var, a);
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Term::Kind::atom: return a.name == b.name;
      case Term::Kind::integer: return a.value == b.value;
      case Term::Kind::structure: {
        if (a.name != b.name || a.args.size() != b.args.size()) return false;
        for (size_t i = 0; i < a.args.size(); ++i)
          if (!unify(a.args[i], b.args[i])) return false;
        return true;
      }
      default: return false;
    }
  }

  // Fully resolves bound variables inside t; acyclic thanks to the occurs
  // check, so recursion terminates.
  Term resolve(const Term& t) const {
    Term w = walk(t);
    if (w.kind == Term::Kind::structure) {
      std::vector<Term> args;
      args.reserve(w.args.size());
      for (const Term& a : w.args) args.push_back(resolve(a));
      return Term::make_struct(w.name, std::move(args));
    }
    return w;
  }
};

}  // namespace

std::optional<std::vector<Binding>> unify_solved_form(const Term& t1, const Term& t2) {
  UnifyState st;
  if (!st.unify(t1, t2)) return std::nullopt;
  std::vector<Binding> out;
  out.reserve(st.bind_order.size());
  for (VarId v : st.bind_order) {
    Term rhs = st.resolve(Term::make_var(v));
    // Var-to-var chains can leave v bound to itself after resolution; such
    // bindings carry no information.
    if (rhs.kind == Term::Kind::var && rhs.var == v) continue;
    out.emplace_back(v, std::move(rhs));
  }
  return out;
}

Term apply_bindings(const Term& t, const std::vector<Binding>& bindings) {
  switch (t.kind) {
    case Term::Kind::var:
      for (const Binding& b : bindings)
        if (b.first == t.var) return b.second;
      return t;
    case Term::Kind::structure: {
      std::vector<Term> args;
      args.reserve(t.args.size());
      for (const Term& a : t.args) args.push_back(apply_bindings(a, bindings));
      return Term::make_struct(t.name, std::move(args));
    }
    default: return t;
  }
}

}  // namespace shtrim
