#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shtrim/basics.hpp"

namespace shtrim {

/// First-order term over atoms, integers, variables and structures. Lists
/// are desugared at parse time into './2' chains terminated by the atom '[]'.
struct Term {
  enum class Kind { var, atom, integer, structure };

  Kind kind = Kind::atom;
  VarId var = invalid_var;
  std::string name;         // atom name or structure functor
  int64_t value = 0;        // integer payload
  std::vector<Term> args;   // structure arguments

  static Term make_var(VarId v) {
    Term t;
    t.kind = Kind::var;
    t.var = v;
    return t;
  }
  static Term make_atom(std::string n) {
    Term t;
    t.kind = Kind::atom;
    t.name = std::move(n);
    return t;
  }
  static Term make_int(int64_t v) {
    Term t;
    t.kind = Kind::integer;
    t.value = v;
    return t;
  }
  static Term make_struct(std::string f, std::vector<Term> as) {
    Term t;
    t.kind = Kind::structure;
    t.name = std::move(f);
    t.args = std::move(as);
    return t;
  }

  bool is_callable() const { return kind == Kind::atom || kind == Kind::structure; }
  int arity() const { return kind == Kind::structure ? static_cast<int>(args.size()) : 0; }
};

bool term_equal(const Term& a, const Term& b);

/// Exact set of variables occurring in t, sorted.
VarList vars_of(const Term& t);
void collect_vars(const Term& t, VarList& out);
/// Variables in order of first occurrence (used for call-pattern keys).
std::vector<VarId> vars_in_order(const Term& t);

struct Literal {
  enum class Kind { call, unify };

  Kind kind = Kind::call;
  Term goal;       // call literal, whole callable term
  Term lhs, rhs;   // unification literal operands
  int position = 0;  // 1-based index in the clause body

  static Literal make_call(Term g, int pos) {
    Literal l;
    l.kind = Kind::call;
    l.goal = std::move(g);
    l.position = pos;
    return l;
  }
  static Literal make_unify(Term a, Term b, int pos) {
    Literal l;
    l.kind = Kind::unify;
    l.lhs = std::move(a);
    l.rhs = std::move(b);
    l.position = pos;
    return l;
  }
};

VarList vars_of(const Literal& lit);

struct Clause {
  Term head;
  std::vector<Literal> body;
  /// Display names for the clause-local dense variable numbering 0..n-1.
  std::vector<std::string> var_names;

  VarList head_vars() const { return vars_of(head); }
  /// env(clause) = vars(head) union vars of every body literal.
  VarList env() const;
};

struct PredKey {
  std::string name;
  int arity = 0;

  bool operator<(const PredKey& o) const {
    if (name != o.name) return name < o.name;
    return arity < o.arity;
  }
  bool operator==(const PredKey& o) const { return name == o.name && arity == o.arity; }
  std::string str() const { return name + "/" + std::to_string(arity); }
};

PredKey pred_key_of(const Term& callable);

struct Entry {
  Term goal;
  /// Explicit call abstraction from the entry directive: variable-name
  /// groups. Empty optional means the default topmost call.
  std::optional<std::vector<std::vector<std::string>>> sharing;
  std::vector<std::string> var_names;
};

struct Program {
  std::vector<PredKey> order;  // predicate keys in source order
  std::map<PredKey, std::vector<Clause>> predicates;
  std::vector<Entry> entries;

  const std::vector<Clause>* find(const PredKey& key) const {
    auto it = predicates.find(key);
    return it == predicates.end() ? nullptr : &it->second;
  }
};

/// Source of fresh analysis-time variable ids with their display names.
class FreshVars {
public:
  VarId fresh(const std::string& display_name);
  const std::string& name(VarId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  size_t count() const { return names_.size(); }

private:
  std::vector<std::string> names_;
};

/// Clause instance with analysis-time variable ids.
struct ClauseInstance {
  Term head;
  std::vector<Literal> body;
  VarList variables;  // all fresh ids used, sorted
};

/// Renames every clause variable injectively to a fresh id. When
/// `suffix_names` is set the display names get a per-instance marker, which
/// keeps renamed clauses readable in dumps; analysis keeps the bare names.
ClauseInstance rename_apart(const Clause& c, FreshVars& fresh, bool suffix_names = false);

/// Instantiates a goal term whose variables live in a clause-local space.
Term instantiate_term(const Term& t, const std::vector<VarId>& mapping);

}  // namespace shtrim
