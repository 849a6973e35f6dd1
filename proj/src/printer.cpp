#include "shtrim/printer.hpp"

#include <functional>
#include <sstream>

namespace shtrim {

namespace {

bool is_list_cell(const Term& t) {
  return t.kind == Term::Kind::structure && t.name == "." && t.args.size() == 2;
}

bool is_nil(const Term& t) { return t.kind == Term::Kind::atom && t.name == "[]"; }

void print_term_rec(std::ostream& os, const Term& t, const NameFn& names) {
  switch (t.kind) {
    case Term::Kind::var: os << names(t.var); return;
    case Term::Kind::atom: os << t.name; return;
    case Term::Kind::integer: os << t.value; return;
    case Term::Kind::structure: {
      if (is_list_cell(t)) {
        os << '[';
        const Term* cell = &t;
        bool first = true;
        while (is_list_cell(*cell)) {
          if (!first) os << ',';
          print_term_rec(os, cell->args[0], names);
          first = false;
          cell = &cell->args[1];
        }
        if (!is_nil(*cell)) {
          os << '|';
          print_term_rec(os, *cell, names);
        }
        os << ']';
        return;
      }
      os << t.name << '(';
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ',';
        print_term_rec(os, t.args[i], names);
      }
      os << ')';
      return;
    }
  }
}

}  // namespace

std::string print_term(const Term& t, const NameFn& names) {
  std::ostringstream os;
  print_term_rec(os, t, names);
  return os.str();
}

std::string print_literal(const Literal& lit, const NameFn& names) {
  if (lit.kind == Literal::Kind::call) return print_term(lit.goal, names);
  return print_term(lit.lhs, names) + "=" + print_term(lit.rhs, names);
}

std::string print_clause(const Clause& c) {
  NameFn names = [&c](VarId v) { return c.var_names.at(v); };
  std::ostringstream os;
  os << print_term(c.head, names);
  if (!c.body.empty()) {
    os << " :- ";
    for (size_t i = 0; i < c.body.size(); ++i) {
      if (i) os << ", ";
      os << print_literal(c.body[i], names);
    }
  }
  os << '.';
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const PredKey& key : p.order) {
    for (const Clause& c : p.predicates.at(key)) os << print_clause(c) << '\n';
  }
  for (const Entry& e : p.entries) {
    NameFn names = [&e](VarId v) { return e.var_names.at(v); };
    os << ":- entry " << print_term(e.goal, names);
    if (e.sharing) {
      os << " sharing [";
      for (size_t g = 0; g < e.sharing->size(); ++g) {
        if (g) os << ',';
        os << '[';
        const auto& group = (*e.sharing)[g];
        for (size_t i = 0; i < group.size(); ++i) {
          if (i) os << ',';
          os << group[i];
        }
        os << ']';
      }
      os << ']';
    }
    os << ".\n";
  }
  return os.str();
}

}  // namespace shtrim
