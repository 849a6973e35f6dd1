#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "shtrim/share_abs.hpp"
#include "shtrim/term.hpp"

namespace shtrim::test {

/// Name-to-id allocator so tests can write abstractions over readable names.
struct Names {
  std::map<std::string, VarId> ids;
  std::vector<std::string> list;

  VarId operator()(const std::string& n) {
    auto it = ids.find(n);
    if (it != ids.end()) return it->second;
    VarId id = static_cast<VarId>(list.size());
    ids.emplace(n, id);
    list.push_back(n);
    return id;
  }

  VarList vars(std::initializer_list<const char*> ns) {
    VarList out;
    for (const char* n : ns) out.push_back((*this)(n));
    sort_unique(out);
    return out;
  }

  NameFn fn() {
    return [this](VarId v) { return list.at(v); };
  }
};

inline ShareAbs mk(Names& ns, std::initializer_list<const char*> domain,
                   std::initializer_list<std::initializer_list<const char*>> groups) {
  VarList dom;
  for (const char* n : domain) dom.push_back(ns(n));
  sort_unique(dom);
  std::vector<VarList> gs;
  for (auto g : groups) {
    VarList vs;
    for (const char* n : g) vs.push_back(ns(n));
    sort_unique(vs);
    gs.push_back(std::move(vs));
  }
  return ShareAbs::make(std::move(dom), gs);
}

inline Term v(Names& ns, const char* n) { return Term::make_var(ns(n)); }
inline Term atom(const char* n) { return Term::make_atom(n); }
inline Term st(const char* f, std::vector<Term> args) {
  return Term::make_struct(f, std::move(args));
}
inline Term cons(Term h, Term t) {
  std::vector<Term> cell;
  cell.push_back(std::move(h));
  cell.push_back(std::move(t));
  return Term::make_struct(".", std::move(cell));
}
inline Term list_of(std::vector<Term> items, Term tail = Term::make_atom("[]")) {
  Term out = std::move(tail);
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons(std::move(*it), out);
  return out;
}

}  // namespace shtrim::test
