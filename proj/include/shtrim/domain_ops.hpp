#pragma once

#include "shtrim/clique_abs.hpp"
#include "shtrim/share_abs.hpp"

namespace shtrim {

/// Uniform facade over the plain and clique set-sharing domains; the solver
/// is templated on one of these.
struct ShareOps {
  using Abs = ShareAbs;
  static constexpr const char* domain_name = "share";

  static Abs bottom() { return ShareAbs::bottom(); }
  static bool is_bottom(const Abs& a) { return a.is_bottom(); }
  static Abs from_share(const ShareAbs& s, size_t = 0) { return s; }
  static ShareAbs to_share(const Abs& a, size_t = 0) { return a; }
  static const VarList& domain(const Abs& a) { return a.domain(); }
  static size_t rep_size(const Abs& a) { return a.group_count(); }
  static bool equal(const Abs& a, const Abs& b) { return a == b; }
  static bool leq(const Abs& a, const Abs& b) { return share::leq(a, b); }
  static Abs lub(const Abs& a, const Abs& b) { return share::lub(a, b); }
  static Abs project(const VarList& vs, const Abs& a) { return share::project(vs, a); }
  static Abs augment(const VarList& vs, const Abs& a) { return share::augment(vs, a); }
  static Abs topmost(const VarList& vs, const Abs& proj, bool filter_ground, size_t guard) {
    return share::topmost(vs, proj, filter_ground, guard);
  }
  static Abs extend(const Abs& call, const VarList& gv, const Abs& prime, size_t guard) {
    return share::extend(call, gv, prime, guard);
  }
  static Abs call_to_entry(const Abs& proj, const Term& goal, const Term& head, size_t guard) {
    return share::call_to_entry(proj, goal, head, guard);
  }
  static Abs exit_to_prime(const Abs& beta, const Term& head, const Term& goal, const Abs& proj,
                           size_t guard) {
    return share::exit_to_prime(beta, head, goal, proj, guard);
  }
  static Abs abstract_unify(const Term& t1, const Term& t2, const Abs& a, size_t guard) {
    return share::abstract_unify_literal(t1, t2, a, guard);
  }
  static Abs ground_vars(const VarList& vs, const Abs& a) { return share::ground_vars(vs, a); }
  static Abs rename(const Abs& a, const std::function<VarId(VarId)>& map) {
    return share::rename(a, map);
  }
  static std::string to_text(const Abs& a, const NameFn& names) {
    return share::to_text(a, names);
  }
};

struct CliqueOps {
  using Abs = CliqueAbs;
  static constexpr const char* domain_name = "share-clique";

  static Abs bottom() { return CliqueAbs::bottom(); }
  static bool is_bottom(const Abs& a) { return a.is_bottom(); }
  static Abs from_share(const ShareAbs& s, size_t = 0) { return clique::compress(s); }
  static ShareAbs to_share(const Abs& a, size_t guard = 0) {
    return clique::decompress(a, guard);
  }
  static const VarList& domain(const Abs& a) { return a.domain(); }
  static size_t rep_size(const Abs& a) { return a.rep_size(); }
  static bool equal(const Abs& a, const Abs& b) { return a == b; }
  static bool leq(const Abs& a, const Abs& b) { return clique::leq(a, b); }
  static Abs lub(const Abs& a, const Abs& b) { return clique::lub(a, b); }
  static Abs project(const VarList& vs, const Abs& a) { return clique::project(vs, a); }
  static Abs augment(const VarList& vs, const Abs& a) { return clique::augment(vs, a); }
  static Abs topmost(const VarList& vs, const Abs& proj, bool filter_ground, size_t) {
    return clique::topmost(vs, proj, filter_ground);
  }
  static Abs extend(const Abs& call, const VarList& gv, const Abs& prime, size_t guard) {
    return clique::extend(call, gv, prime, guard);
  }
  static Abs call_to_entry(const Abs& proj, const Term& goal, const Term& head, size_t guard) {
    return clique::call_to_entry(proj, goal, head, guard);
  }
  static Abs exit_to_prime(const Abs& beta, const Term& head, const Term& goal, const Abs& proj,
                           size_t guard) {
    return clique::exit_to_prime(beta, head, goal, proj, guard);
  }
  static Abs abstract_unify(const Term& t1, const Term& t2, const Abs& a, size_t guard) {
    return clique::abstract_unify_literal(t1, t2, a, guard);
  }
  static Abs ground_vars(const VarList& vs, const Abs& a) { return clique::ground_vars(vs, a); }
  static Abs rename(const Abs& a, const std::function<VarId(VarId)>& map) {
    return clique::rename(a, map);
  }
  static std::string to_text(const Abs& a, const NameFn& names) {
    return clique::to_text(a, names);
  }
};

}  // namespace shtrim
