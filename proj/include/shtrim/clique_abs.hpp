#pragma once

#include "shtrim/share_abs.hpp"

namespace shtrim {

/// Compressed set-sharing element: a clique C stands for the full proper
/// powerset of C. Normal form: no sharing group is a subset of a clique, no
/// clique is a subset of another, cliques have at least two variables.
/// Compression is lossless, so decompress(compress(a)) == a always.
class CliqueAbs {
public:
  CliqueAbs() : bottom_(true) {}

  static CliqueAbs bottom() { return CliqueAbs(); }
  static CliqueAbs from_parts(VarList domain, std::vector<uint64_t> cliques,
                              std::vector<uint64_t> sharing);
  static CliqueAbs make(VarList domain, const std::vector<VarList>& cliques,
                        const std::vector<VarList>& sharing);

  bool is_bottom() const { return bottom_; }
  const VarList& domain() const { return dom_; }
  const std::vector<uint64_t>& cliques() const { return cliques_; }
  const std::vector<uint64_t>& sharing() const { return sharing_; }
  /// Representation size: clique count plus group count.
  size_t rep_size() const { return cliques_.size() + sharing_.size(); }

  uint64_t mask_of(const VarList& vs) const;
  VarList mask_vars(uint64_t mask) const;

  bool operator==(const CliqueAbs& o) const {
    return bottom_ == o.bottom_ && dom_ == o.dom_ && cliques_ == o.cliques_ &&
           sharing_ == o.sharing_;
  }
  bool operator!=(const CliqueAbs& o) const { return !(*this == o); }

private:
  bool bottom_ = false;
  VarList dom_;
  std::vector<uint64_t> cliques_;
  std::vector<uint64_t> sharing_;
};

namespace clique {

/// Greedy lossless compression: repeatedly extracts the largest variable set
/// (ties by canonical order) whose full proper powerset is present.
CliqueAbs compress(const ShareAbs& a);
ShareAbs decompress(const CliqueAbs& c, size_t guard = 0);

bool is_bottom(const CliqueAbs& a);
bool leq(const CliqueAbs& a, const CliqueAbs& b, size_t guard = 0);
CliqueAbs lub(const CliqueAbs& a, const CliqueAbs& b);

/// Native: intersects cliques and groups with vs; exact because projecting a
/// powerset gives the powerset of the intersection.
CliqueAbs project(const VarList& vs, const CliqueAbs& a);
/// Native: new variables join as singleton groups.
CliqueAbs augment(const VarList& vs, const CliqueAbs& a);
/// Native: one clique over vs, constant size.
CliqueAbs topmost(const VarList& vs, const CliqueAbs& proj, bool filter_ground = false);
/// Native: drops cliques/groups through the grounded variables.
CliqueAbs ground_vars(const VarList& vs, const CliqueAbs& a);

/// Fallback ops: decompress, run the plain-domain operation, recompress.
CliqueAbs abstract_unify_literal(const Term& t1, const Term& t2, const CliqueAbs& a,
                                 size_t guard = 0);
CliqueAbs call_to_entry(const CliqueAbs& proj, const Term& goal, const Term& head,
                        size_t guard = 0);
CliqueAbs exit_to_prime(const CliqueAbs& beta_exit, const Term& head, const Term& goal,
                        const CliqueAbs& proj, size_t guard = 0);
CliqueAbs extend(const CliqueAbs& call, const VarList& goal_vars, const CliqueAbs& prime,
                 size_t guard = 0);

CliqueAbs rename(const CliqueAbs& a, const std::function<VarId(VarId)>& map);

/// "(cliques=[[X,Y]], sharing=[[Z]])" with canonical ordering, or "bottom".
std::string to_text(const CliqueAbs& a, const NameFn& names);

}  // namespace clique

}  // namespace shtrim
