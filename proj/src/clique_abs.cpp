#include "shtrim/clique_abs.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

namespace shtrim {

namespace {

bool mask_subset(uint64_t a, uint64_t b) { return (a & b) == a; }

// Drops sharing groups covered by a clique and cliques covered by another
// clique; deduplicates and demotes single-variable cliques to groups.
void normalize(std::vector<uint64_t>& cliques, std::vector<uint64_t>& sharing) {
  std::vector<uint64_t> cl;
  for (uint64_t c : cliques) {
    if (c == 0) continue;
    if (std::popcount(c) == 1) {
      sharing.push_back(c);
      continue;
    }
    cl.push_back(c);
  }
  std::sort(cl.begin(), cl.end(), [](uint64_t a, uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa > pb;
    return a < b;
  });
  std::vector<uint64_t> kept;
  for (uint64_t c : cl) {
    bool covered = false;
    for (uint64_t k : kept)
      if (mask_subset(c, k)) { covered = true; break; }
    if (!covered) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<uint64_t> sh;
  for (uint64_t s : sharing) {
    if (s == 0) continue;
    bool covered = false;
    for (uint64_t k : kept)
      if (mask_subset(s, k)) { covered = true; break; }
    if (!covered) sh.push_back(s);
  }
  std::sort(sh.begin(), sh.end());
  sh.erase(std::unique(sh.begin(), sh.end()), sh.end());
  cliques = std::move(kept);
  sharing = std::move(sh);
}

}  // namespace

CliqueAbs CliqueAbs::from_parts(VarList domain, std::vector<uint64_t> cliques,
                                std::vector<uint64_t> sharing) {
  if (domain.size() > ShareAbs::max_domain)
    throw analysis_interrupt(InterruptKind::size_guard);
  normalize(cliques, sharing);
  CliqueAbs a;
  a.bottom_ = false;
  a.dom_ = std::move(domain);
  a.cliques_ = std::move(cliques);
  a.sharing_ = std::move(sharing);
  return a;
}

CliqueAbs CliqueAbs::make(VarList domain, const std::vector<VarList>& cliques,
                          const std::vector<VarList>& sharing) {
  sort_unique(domain);
  ShareAbs probe = ShareAbs::from_masks(domain, {});
  auto to_mask = [&probe](const VarList& vs) {
    uint64_t m = probe.mask_of(vs);
    VarList check = vs;
    sort_unique(check);
    if (static_cast<size_t>(std::popcount(m)) != check.size())
      throw std::logic_error("clique/group variable outside the domain");
    return m;
  };
  std::vector<uint64_t> cm, sm;
  for (const VarList& c : cliques) cm.push_back(to_mask(c));
  for (const VarList& s : sharing) sm.push_back(to_mask(s));
  return from_parts(std::move(domain), std::move(cm), std::move(sm));
}

uint64_t CliqueAbs::mask_of(const VarList& vs) const {
  ShareAbs probe = ShareAbs::from_masks(dom_, {});
  return probe.mask_of(vs);
}

VarList CliqueAbs::mask_vars(uint64_t mask) const {
  VarList out;
  while (mask) {
    int bit = std::countr_zero(mask);
    out.push_back(dom_[bit]);
    mask &= mask - 1;
  }
  return out;
}

namespace clique {

CliqueAbs compress(const ShareAbs& a) {
  if (a.is_bottom()) return CliqueAbs::bottom();
  std::unordered_set<uint64_t> remaining(a.groups().begin(), a.groups().end());
  std::vector<uint64_t> cliques;
  for (;;) {
    // Candidates must themselves be present; scan the largest first.
    std::vector<uint64_t> order(remaining.begin(), remaining.end());
    std::sort(order.begin(), order.end(), [](uint64_t x, uint64_t y) {
      int px = std::popcount(x), py = std::popcount(y);
      if (px != py) return px > py;
      return x < y;
    });
    uint64_t found = 0;
    for (uint64_t cand : order) {
      if (std::popcount(cand) < 2) break;
      bool full = true;
      for (uint64_t sub = cand; sub; sub = (sub - 1) & cand) {
        if (!remaining.count(sub)) { full = false; break; }
      }
      if (full) { found = cand; break; }
    }
    if (!found) break;
    cliques.push_back(found);
    for (uint64_t sub = found; sub; sub = (sub - 1) & found) remaining.erase(sub);
  }
  std::vector<uint64_t> sharing(remaining.begin(), remaining.end());
  return CliqueAbs::from_parts(a.domain(), std::move(cliques), std::move(sharing));
}

ShareAbs decompress(const CliqueAbs& c, size_t guard) {
  if (c.is_bottom()) return ShareAbs::bottom();
  std::vector<uint64_t> masks = c.sharing();
  for (uint64_t cl : c.cliques()) {
    size_t count = (size_t{1} << std::popcount(cl)) - 1;
    if (guard && masks.size() + count > guard)
      throw analysis_interrupt(InterruptKind::size_guard);
    for (uint64_t sub = cl; sub; sub = (sub - 1) & cl) masks.push_back(sub);
  }
  return ShareAbs::from_masks(c.domain(), std::move(masks));
}

bool is_bottom(const CliqueAbs& a) { return a.is_bottom(); }

bool leq(const CliqueAbs& a, const CliqueAbs& b, size_t guard) {
  return share::leq(decompress(a, guard), decompress(b, guard));
}

CliqueAbs lub(const CliqueAbs& a, const CliqueAbs& b) {
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  if (a.domain() != b.domain()) throw std::logic_error("lub over distinct domains");
  std::vector<uint64_t> cliques = a.cliques();
  cliques.insert(cliques.end(), b.cliques().begin(), b.cliques().end());
  std::vector<uint64_t> sharing = a.sharing();
  sharing.insert(sharing.end(), b.sharing().begin(), b.sharing().end());
  return CliqueAbs::from_parts(a.domain(), std::move(cliques), std::move(sharing));
}

CliqueAbs project(const VarList& vs, const CliqueAbs& a) {
  if (a.is_bottom()) return a;
  VarList keep = vs;
  sort_unique(keep);
  VarList dom = intersect(keep, a.domain());
  uint64_t keep_mask = a.mask_of(dom);
  // Re-express masks in the projected domain: positions compact leftwards.
  ShareAbs probe = ShareAbs::from_masks(dom, {});
  auto remap = [&](uint64_t m) {
    return probe.mask_of(a.mask_vars(m & keep_mask));
  };
  std::vector<uint64_t> cliques, sharing;
  for (uint64_t c : a.cliques()) {
    uint64_t r = remap(c);
    if (r) cliques.push_back(r);
  }
  for (uint64_t s : a.sharing()) {
    uint64_t r = remap(s);
    if (r) sharing.push_back(r);
  }
  return CliqueAbs::from_parts(std::move(dom), std::move(cliques), std::move(sharing));
}

CliqueAbs augment(const VarList& vs, const CliqueAbs& a) {
  if (a.is_bottom()) return a;
  VarList fresh = vs;
  sort_unique(fresh);
  if (!disjoint(fresh, a.domain()))
    throw std::logic_error("augment variables overlap the abstraction domain");
  if (fresh.empty()) return a;
  VarList dom = unite(a.domain(), fresh);
  ShareAbs probe = ShareAbs::from_masks(dom, {});
  std::vector<uint64_t> cliques, sharing;
  for (uint64_t c : a.cliques()) cliques.push_back(probe.mask_of(a.mask_vars(c)));
  for (uint64_t s : a.sharing()) sharing.push_back(probe.mask_of(a.mask_vars(s)));
  for (VarId v : fresh) sharing.push_back(probe.mask_of({v}));
  return CliqueAbs::from_parts(std::move(dom), std::move(cliques), std::move(sharing));
}

CliqueAbs topmost(const VarList& vs, const CliqueAbs& proj, bool filter_ground) {
  VarList dom = vs;
  sort_unique(dom);
  VarList carrier = dom;
  if (filter_ground && !proj.is_bottom()) {
    VarList live;
    uint64_t covered = 0;
    for (uint64_t c : proj.cliques()) covered |= c;
    for (uint64_t s : proj.sharing()) covered |= s;
    for (VarId v : carrier) {
      uint64_t m = proj.mask_of({v});
      // Variables outside proj's domain stay; domain variables must occur.
      if (m == 0 || (m & covered)) live.push_back(v);
    }
    carrier = std::move(live);
  }
  ShareAbs probe = ShareAbs::from_masks(dom, {});
  std::vector<uint64_t> cliques, sharing;
  uint64_t cm = probe.mask_of(carrier);
  if (std::popcount(cm) >= 2)
    cliques.push_back(cm);
  else if (cm)
    sharing.push_back(cm);
  return CliqueAbs::from_parts(std::move(dom), std::move(cliques), std::move(sharing));
}

CliqueAbs ground_vars(const VarList& vs, const CliqueAbs& a) {
  if (a.is_bottom()) return a;
  uint64_t g = a.mask_of(vs);
  std::vector<uint64_t> cliques, sharing;
  for (uint64_t c : a.cliques()) {
    uint64_t r = c & ~g;
    if (r) cliques.push_back(r);
  }
  for (uint64_t s : a.sharing())
    if (!(s & g)) sharing.push_back(s);
  return CliqueAbs::from_parts(a.domain(), std::move(cliques), std::move(sharing));
}

CliqueAbs abstract_unify_literal(const Term& t1, const Term& t2, const CliqueAbs& a,
                                 size_t guard) {
  if (a.is_bottom()) return a;
  return compress(share::abstract_unify_literal(t1, t2, decompress(a, guard), guard));
}

CliqueAbs call_to_entry(const CliqueAbs& proj, const Term& goal, const Term& head,
                        size_t guard) {
  if (proj.is_bottom()) return CliqueAbs::bottom();
  return compress(share::call_to_entry(decompress(proj, guard), goal, head, guard));
}

CliqueAbs exit_to_prime(const CliqueAbs& beta_exit, const Term& head, const Term& goal,
                        const CliqueAbs& proj, size_t guard) {
  if (beta_exit.is_bottom() || proj.is_bottom()) return CliqueAbs::bottom();
  return compress(share::exit_to_prime(decompress(beta_exit, guard), head, goal,
                                       decompress(proj, guard), guard));
}

CliqueAbs extend(const CliqueAbs& call, const VarList& goal_vars, const CliqueAbs& prime,
                 size_t guard) {
  if (call.is_bottom() || prime.is_bottom()) return CliqueAbs::bottom();
  return compress(share::extend(decompress(call, guard), goal_vars, decompress(prime, guard),
                                guard));
}

CliqueAbs rename(const CliqueAbs& a, const std::function<VarId(VarId)>& map) {
  if (a.is_bottom()) return a;
  VarList new_dom;
  for (VarId v : a.domain()) new_dom.push_back(map(v));
  VarList sorted_dom = new_dom;
  sort_unique(sorted_dom);
  if (sorted_dom.size() != new_dom.size())
    throw std::logic_error("rename mapping is not injective on the domain");
  std::vector<VarList> cliques, sharing;
  for (uint64_t c : a.cliques()) {
    VarList g;
    for (VarId v : a.mask_vars(c)) g.push_back(map(v));
    cliques.push_back(std::move(g));
  }
  for (uint64_t s : a.sharing()) {
    VarList g;
    for (VarId v : a.mask_vars(s)) g.push_back(map(v));
    sharing.push_back(std::move(g));
  }
  return CliqueAbs::make(std::move(sorted_dom), cliques, sharing);
}

std::string to_text(const CliqueAbs& a, const NameFn& names) {
  if (a.is_bottom()) return "bottom";
  auto part = [&](const std::vector<uint64_t>& masks) {
    std::vector<std::vector<std::string>> named;
    for (uint64_t m : masks) {
      std::vector<std::string> group;
      for (VarId v : a.mask_vars(m)) group.push_back(names(v));
      std::sort(group.begin(), group.end());
      named.push_back(std::move(group));
    }
    std::sort(named.begin(), named.end());
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < named.size(); ++i) {
      if (i) os << ',';
      os << '[';
      for (size_t j = 0; j < named[i].size(); ++j) {
        if (j) os << ',';
        os << named[i][j];
      }
      os << ']';
    }
    os << ']';
    return os.str();
  };
  return "(cliques=" + part(a.cliques()) + ", sharing=" + part(a.sharing()) + ")";
}

}  // namespace clique
}  // namespace shtrim
