#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shtrim/term.hpp"

namespace shtrim {

/// Element of the set-sharing lattice: bottom, or a pair of a variable
/// domain and a set of nonempty sharing groups over it. Groups are bit
/// masks indexed by position in the sorted domain vector; the group list is
/// kept sorted and duplicate-free so equality is structural. A domain
/// variable absent from every group is ground.
class ShareAbs {
public:
  static constexpr size_t max_domain = 64;

  ShareAbs() : bottom_(true) {}

  static ShareAbs bottom() { return ShareAbs(); }
  static ShareAbs top_empty() { return from_masks({}, {}); }
  /// Builds an element from explicit variable groups. Throws std::logic_error
  /// if a group mentions a variable outside the domain or is empty.
  static ShareAbs make(VarList domain, const std::vector<VarList>& groups);
  /// Builds from raw masks over `domain` positions; canonicalizes.
  static ShareAbs from_masks(VarList domain, std::vector<uint64_t> masks);

  bool is_bottom() const { return bottom_; }
  const VarList& domain() const { return dom_; }
  const std::vector<uint64_t>& groups() const { return groups_; }
  size_t group_count() const { return groups_.size(); }

  /// Mask of the positions of `vs` members present in the domain.
  uint64_t mask_of(const VarList& vs) const;
  /// Variables of one group.
  VarList group_vars(uint64_t mask) const;
  /// True when v is in the domain but in no group.
  bool is_ground(VarId v) const;

  bool operator==(const ShareAbs& o) const {
    return bottom_ == o.bottom_ && dom_ == o.dom_ && groups_ == o.groups_;
  }
  bool operator!=(const ShareAbs& o) const { return !(*this == o); }

private:
  bool bottom_ = false;
  VarList dom_;
  std::vector<uint64_t> groups_;
};

namespace share {

/// Closure of a mask collection under pairwise union. `guard` (when nonzero)
/// bounds the result size; exceeding it raises the size-guard interrupt.
std::vector<uint64_t> star_closure(const std::vector<uint64_t>& masks, size_t guard = 0);
/// {s1 | s2 : s1 in a, s2 in b}, deduplicated.
std::vector<uint64_t> bin_union(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
                                size_t guard = 0);

bool is_bottom(const ShareAbs& a);
bool leq(const ShareAbs& a, const ShareAbs& b);
ShareAbs lub(const ShareAbs& a, const ShareAbs& b);

/// Restriction: domain becomes vs ∩ domain(a), groups intersected, empties
/// dropped. Bottom passes through.
ShareAbs project(const VarList& vs, const ShareAbs& a);
/// Adds fresh, free, independent variables: each joins as a singleton group.
/// Throws std::logic_error when vs overlaps the domain.
ShareAbs augment(const VarList& vs, const ShareAbs& a);

/// Abstract unification for one solved-form binding x = t.
ShareAbs amgu(VarId x, const Term& t, const ShareAbs& a, size_t guard = 0);
/// Deliberately naive reference for amgu: plain set-of-sets representation,
/// saturation-to-fixpoint star, no incremental shortcuts.
ShareAbs amgu_reference(VarId x, const Term& t, const ShareAbs& a);

/// Solves t1 = t2 and folds amgu over the bindings; clash yields bottom.
ShareAbs abstract_unify_literal(const Term& t1, const Term& t2, const ShareAbs& a,
                                size_t guard = 0);

/// Abstract conjunction of proj (over the goal variables) with the
/// unification goal = head: augments proj with vars(head), folds amgu over
/// the solved form. nullopt when the terms do not unify. Shared by
/// call_to_entry and exit_to_prime.
std::optional<ShareAbs> unify_context(const ShareAbs& proj, const Term& goal, const Term& head,
                                      size_t guard = 0);

/// Entry over the head variables for a clause whose head unifies with the
/// goal under proj; bottom when unification fails.
ShareAbs call_to_entry(const ShareAbs& proj, const Term& goal, const Term& head,
                       size_t guard = 0);

/// Success over the goal variables: re-derives the goal=head unification in
/// the context of proj, conjoins beta_exit (over the head variables) via
/// extend, and projects onto vars(goal). The proj context is what lets the
/// goal-side sharing structure prune impossible groups.
ShareAbs exit_to_prime(const ShareAbs& beta_exit, const Term& head, const Term& goal,
                       const ShareAbs& proj, size_t guard = 0);

/// Updates `call` with `prime` information over goal_vars:
/// keep groups disjoint from goal_vars; among star-closed relevant groups
/// keep those whose goal_vars part appears in prime.
ShareAbs extend(const ShareAbs& call, const VarList& goal_vars, const ShareAbs& prime,
                size_t guard = 0);

/// Most general element over vs: the full proper powerset. Ground variables
/// of proj are kept (the default reading); `filter_ground` drops them first
/// for a strictly more precise variant.
ShareAbs topmost(const VarList& vs, const ShareAbs& proj, bool filter_ground = false,
                 size_t guard = 0);

/// Grounds every variable in vs: removes all groups meeting vs.
ShareAbs ground_vars(const VarList& vs, const ShareAbs& a);

/// Renames domain and groups through an id mapping (must be injective on the
/// domain).
ShareAbs rename(const ShareAbs& a, const std::function<VarId(VarId)>& map);

/// Canonical text: "bottom" or "[[A,B],[C]]" with names sorted inside groups
/// and groups sorted lexicographically.
std::string to_text(const ShareAbs& a, const NameFn& names);
/// Order-insensitive parse of the textual form over the given domain.
ShareAbs parse_text(const std::string& text, const VarList& domain,
                    const std::function<VarId(const std::string&)>& resolve);

/// All elements over the given domain (|domain| <= 4), for exhaustive checks.
std::vector<ShareAbs> all_abstractions(const VarList& domain);

}  // namespace share

}  // namespace shtrim
