#include "shtrim/share_abs.hpp"

#include "shtrim/unify.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace shtrim {

ShareAbs ShareAbs::make(VarList domain, const std::vector<VarList>& groups) {
  sort_unique(domain);
  std::vector<uint64_t> masks;
  masks.reserve(groups.size());
  ShareAbs probe = from_masks(domain, {});
  for (const VarList& g : groups) {
    if (g.empty()) throw std::logic_error("sharing group must be nonempty");
    uint64_t m = 0;
    for (VarId v : g) {
      auto it = std::lower_bound(probe.dom_.begin(), probe.dom_.end(), v);
      if (it == probe.dom_.end() || *it != v)
        throw std::logic_error("sharing group variable outside the domain");
      m |= uint64_t{1} << (it - probe.dom_.begin());
    }
    masks.push_back(m);
  }
  return from_masks(std::move(domain), std::move(masks));
}

ShareAbs ShareAbs::from_masks(VarList domain, std::vector<uint64_t> masks) {
  if (domain.size() > max_domain) throw analysis_interrupt(InterruptKind::size_guard);
  ShareAbs a;
  a.bottom_ = false;
  a.dom_ = std::move(domain);
  masks.erase(std::remove(masks.begin(), masks.end(), uint64_t{0}), masks.end());
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  a.groups_ = std::move(masks);
  return a;
}

uint64_t ShareAbs::mask_of(const VarList& vs) const {
  uint64_t m = 0;
  for (VarId v : vs) {
    auto it = std::lower_bound(dom_.begin(), dom_.end(), v);
    if (it != dom_.end() && *it == v) m |= uint64_t{1} << (it - dom_.begin());
  }
  return m;
}

VarList ShareAbs::group_vars(uint64_t mask) const {
  VarList out;
  while (mask) {
    int bit = std::countr_zero(mask);
    out.push_back(dom_[bit]);
    mask &= mask - 1;
  }
  return out;
}

bool ShareAbs::is_ground(VarId v) const {
  if (bottom_) return false;
  uint64_t m = mask_of({v});
  if (m == 0) return false;  // outside the domain
  for (uint64_t g : groups_)
    if (g & m) return false;
  return true;
}

namespace share {

namespace {

void check_guard(size_t n, size_t guard) {
  if (guard && n > guard) throw analysis_interrupt(InterruptKind::size_guard);
}

// Positions map for re-expressing groups of `from` inside `to`; variables
// missing from `to` map to -1 and get dropped by remap_mask.
std::vector<int> position_map(const VarList& from, const VarList& to) {
  std::vector<int> map(from.size(), -1);
  size_t j = 0;
  for (size_t i = 0; i < from.size(); ++i) {
    while (j < to.size() && to[j] < from[i]) ++j;
    if (j < to.size() && to[j] == from[i]) map[i] = static_cast<int>(j);
  }
  return map;
}

uint64_t remap_mask(uint64_t mask, const std::vector<int>& map) {
  uint64_t out = 0;
  while (mask) {
    int bit = std::countr_zero(mask);
    if (map[bit] >= 0) out |= uint64_t{1} << map[bit];
    mask &= mask - 1;
  }
  return out;
}

std::vector<uint64_t> remap_all(const std::vector<uint64_t>& masks, const std::vector<int>& map) {
  std::vector<uint64_t> out;
  out.reserve(masks.size());
  for (uint64_t m : masks) {
    uint64_t r = remap_mask(m, map);
    if (r) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void split_rel(const ShareAbs& a, uint64_t probe, std::vector<uint64_t>& rel,
               std::vector<uint64_t>& irrel) {
  for (uint64_t g : a.groups()) {
    if (g & probe)
      rel.push_back(g);
    else
      irrel.push_back(g);
  }
}

}  // namespace

std::vector<uint64_t> star_closure(const std::vector<uint64_t>& masks, size_t guard) {
  std::vector<uint64_t> work = masks;
  std::sort(work.begin(), work.end());
  work.erase(std::unique(work.begin(), work.end()), work.end());
  std::unordered_set<uint64_t> seen(work.begin(), work.end());
  for (size_t i = 0; i < work.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      uint64_t u = work[i] | work[j];
      if (seen.insert(u).second) {
        work.push_back(u);
        check_guard(work.size(), guard);
      }
    }
  }
  std::sort(work.begin(), work.end());
  return work;
}

std::vector<uint64_t> bin_union(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
                                size_t guard) {
  std::unordered_set<uint64_t> seen;
  seen.reserve(a.size() * 2);
  for (uint64_t x : a)
    for (uint64_t y : b) {
      if (seen.insert(x | y).second) check_guard(seen.size(), guard);
    }
  std::vector<uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_bottom(const ShareAbs& a) { return a.is_bottom(); }

bool leq(const ShareAbs& a, const ShareAbs& b) {
  if (a.is_bottom()) return true;
  if (b.is_bottom()) return false;
  if (a.domain() != b.domain()) throw std::logic_error("leq over distinct domains");
  return std::includes(b.groups().begin(), b.groups().end(), a.groups().begin(),
                       a.groups().end());
}

ShareAbs lub(const ShareAbs& a, const ShareAbs& b) {
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  if (a.domain() != b.domain()) throw std::logic_error("lub over distinct domains");
  std::vector<uint64_t> merged;
  merged.reserve(a.groups().size() + b.groups().size());
  std::merge(a.groups().begin(), a.groups().end(), b.groups().begin(), b.groups().end(),
             std::back_inserter(merged));
  return ShareAbs::from_masks(a.domain(), std::move(merged));
}

ShareAbs project(const VarList& vs, const ShareAbs& a) {
  if (a.is_bottom()) return a;
  VarList keep = vs;
  sort_unique(keep);
  VarList dom = intersect(keep, a.domain());
  auto map = position_map(a.domain(), dom);
  return ShareAbs::from_masks(std::move(dom), remap_all(a.groups(), map));
}

ShareAbs augment(const VarList& vs, const ShareAbs& a) {
  if (a.is_bottom()) return a;
  VarList fresh = vs;
  sort_unique(fresh);
  if (!disjoint(fresh, a.domain()))
    throw std::logic_error("augment variables overlap the abstraction domain");
  if (fresh.empty()) return a;
  VarList dom = unite(a.domain(), fresh);
  auto map = position_map(a.domain(), dom);
  std::vector<uint64_t> masks = remap_all(a.groups(), map);
  auto singleton_map = position_map(fresh, dom);
  for (size_t i = 0; i < fresh.size(); ++i) masks.push_back(uint64_t{1} << singleton_map[i]);
  return ShareAbs::from_masks(std::move(dom), std::move(masks));
}

ShareAbs amgu(VarId x, const Term& t, const ShareAbs& a, size_t guard) {
  if (a.is_bottom()) return a;
  VarList tv = vars_of(t);
  VarList xl{x};
  if (!subset_of(xl, a.domain()) || !subset_of(tv, a.domain()))
    throw std::logic_error("amgu binding variables outside the abstraction domain");
  uint64_t x_mask = a.mask_of(xl);
  uint64_t t_mask = a.mask_of(tv);
  std::vector<uint64_t> rel_x, rel_t, irrel;
  for (uint64_t g : a.groups()) {
    bool rx = (g & x_mask) != 0;
    bool rt = (g & t_mask) != 0;
    if (rx) rel_x.push_back(g);
    if (rt) rel_t.push_back(g);
    if (!rx && !rt) irrel.push_back(g);
  }
  std::vector<uint64_t> merged =
      bin_union(star_closure(rel_x, guard), star_closure(rel_t, guard), guard);
  merged.insert(merged.end(), irrel.begin(), irrel.end());
  check_guard(merged.size(), guard);
  return ShareAbs::from_masks(a.domain(), std::move(merged));
}

ShareAbs abstract_unify_literal(const Term& t1, const Term& t2, const ShareAbs& a,
                                size_t guard) {
  if (a.is_bottom()) return a;
  auto solved = unify_solved_form(t1, t2);
  if (!solved) return ShareAbs::bottom();
  ShareAbs cur = a;
  for (const Binding& b : *solved) cur = amgu(b.first, b.second, cur, guard);
  return cur;
}

std::optional<ShareAbs> unify_context(const ShareAbs& proj, const Term& goal, const Term& head,
                                      size_t guard) {
  if (proj.is_bottom()) return std::nullopt;
  auto solved = unify_solved_form(goal, head);
  if (!solved) return std::nullopt;
  VarList hv = vars_of(head);
  ShareAbs ctx = augment(subtract(hv, proj.domain()), proj);
  for (const Binding& b : *solved) ctx = amgu(b.first, b.second, ctx, guard);
  return ctx;
}

ShareAbs call_to_entry(const ShareAbs& proj, const Term& goal, const Term& head, size_t guard) {
  auto ctx = unify_context(proj, goal, head, guard);
  if (!ctx) return ShareAbs::bottom();
  return project(vars_of(head), *ctx);
}

ShareAbs exit_to_prime(const ShareAbs& beta_exit, const Term& head, const Term& goal,
                       const ShareAbs& proj, size_t guard) {
  if (beta_exit.is_bottom()) return ShareAbs::bottom();
  auto ctx = unify_context(proj, goal, head, guard);
  if (!ctx) return ShareAbs::bottom();
  ShareAbs conj = extend(*ctx, vars_of(head), beta_exit, guard);
  return project(vars_of(goal), conj);
}

ShareAbs extend(const ShareAbs& call, const VarList& goal_vars, const ShareAbs& prime,
                size_t guard) {
  if (call.is_bottom() || prime.is_bottom()) return ShareAbs::bottom();
  VarList gv = goal_vars;
  sort_unique(gv);
  if (prime.domain() != gv || !subset_of(gv, call.domain()))
    throw std::logic_error("extend: prime domain must be the goal variables within call");
  uint64_t gv_mask = call.mask_of(gv);
  std::vector<uint64_t> rel, irrel;
  split_rel(call, gv_mask, rel, irrel);
  auto map = position_map(prime.domain(), call.domain());
  std::unordered_set<uint64_t> prime_masks;
  for (uint64_t g : prime.groups()) prime_masks.insert(remap_mask(g, map));
  std::vector<uint64_t> out = irrel;
  for (uint64_t s : star_closure(rel, guard)) {
    if (prime_masks.count(s & gv_mask)) out.push_back(s);
  }
  check_guard(out.size(), guard);
  return ShareAbs::from_masks(call.domain(), std::move(out));
}

ShareAbs topmost(const VarList& vs, const ShareAbs& proj, bool filter_ground, size_t guard) {
  VarList dom = vs;
  sort_unique(dom);
  VarList carrier = dom;
  if (filter_ground && !proj.is_bottom()) {
    VarList live;
    for (VarId v : carrier)
      if (!proj.is_ground(v)) live.push_back(v);
    carrier = std::move(live);
  }
  size_t n = carrier.size();
  if (n > 26) throw analysis_interrupt(InterruptKind::size_guard);
  check_guard(n ? (size_t{1} << n) - 1 : 0, guard);
  ShareAbs base = ShareAbs::from_masks(dom, {});
  uint64_t carrier_mask = base.mask_of(carrier);
  std::vector<uint64_t> masks;
  masks.reserve(n ? (size_t{1} << n) - 1 : 0);
  // Enumerates the nonempty subsets of carrier_mask.
  for (uint64_t sub = carrier_mask; sub; sub = (sub - 1) & carrier_mask) masks.push_back(sub);
  return ShareAbs::from_masks(std::move(dom), std::move(masks));
}

ShareAbs ground_vars(const VarList& vs, const ShareAbs& a) {
  if (a.is_bottom()) return a;
  uint64_t m = a.mask_of(vs);
  std::vector<uint64_t> out;
  for (uint64_t g : a.groups())
    if (!(g & m)) out.push_back(g);
  return ShareAbs::from_masks(a.domain(), std::move(out));
}

ShareAbs rename(const ShareAbs& a, const std::function<VarId(VarId)>& map) {
  if (a.is_bottom()) return a;
  VarList new_dom;
  new_dom.reserve(a.domain().size());
  for (VarId v : a.domain()) new_dom.push_back(map(v));
  std::vector<VarList> groups;
  groups.reserve(a.groups().size());
  for (uint64_t g : a.groups()) {
    VarList renamed;
    for (VarId v : a.group_vars(g)) renamed.push_back(map(v));
    groups.push_back(std::move(renamed));
  }
  VarList sorted_dom = new_dom;
  sort_unique(sorted_dom);
  if (sorted_dom.size() != new_dom.size())
    throw std::logic_error("rename mapping is not injective on the domain");
  return ShareAbs::make(std::move(sorted_dom), groups);
}

std::string to_text(const ShareAbs& a, const NameFn& names) {
  if (a.is_bottom()) return "bottom";
  std::vector<std::vector<std::string>> named;
  named.reserve(a.groups().size());
  for (uint64_t g : a.groups()) {
    std::vector<std::string> group;
    for (VarId v : a.group_vars(g)) group.push_back(names(v));
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
}

ShareAbs parse_text(const std::string& text, const VarList& domain,
                    const std::function<VarId(const std::string&)>& resolve) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "bottom") return ShareAbs::bottom();
  std::vector<VarList> groups;
  size_t i = 0;
  auto fail = [&](const char* msg) {
    throw parse_error(SourcePos{1, static_cast<int>(i) + 1}, msg);
  };
  if (i >= s.size() || s[i] != '[') fail("expected '['");
  ++i;
  while (i < s.size() && s[i] != ']') {
    if (s[i] != '[') fail("expected '['");
    ++i;
    VarList group;
    while (i < s.size() && s[i] != ']') {
      size_t start = i;
      while (i < s.size() && s[i] != ',' && s[i] != ']') ++i;
      if (i == start) fail("expected a variable name");
      group.push_back(resolve(s.substr(start, i - start)));
      if (i < s.size() && s[i] == ',') ++i;
    }
    if (i >= s.size()) fail("unterminated group");
    ++i;
    sort_unique(group);
    groups.push_back(std::move(group));
    if (i < s.size() && s[i] == ',') ++i;
  }
  if (i >= s.size()) fail("unterminated abstraction");
  return ShareAbs::make(domain, groups);
}

std::vector<ShareAbs> all_abstractions(const VarList& domain) {
  if (domain.size() > 4) throw std::logic_error("all_abstractions limited to 4 variables");
  size_t n_masks = (size_t{1} << domain.size()) - 1;
  size_t count = size_t{1} << n_masks;
  std::vector<ShareAbs> out;
  out.reserve(count);
  for (size_t pick = 0; pick < count; ++pick) {
    std::vector<uint64_t> masks;
    for (size_t m = 0; m < n_masks; ++m)
      if (pick & (size_t{1} << m)) masks.push_back(static_cast<uint64_t>(m + 1));
    out.push_back(ShareAbs::from_masks(domain, std::move(masks)));
  }
  return out;
}

// -- reference implementation ------------------------------------------------

namespace {

using SetOfSets = std::set<std::set<VarId>>;

SetOfSets naive_star(SetOfSets ss) {
  for (;;) {
    SetOfSets next = ss;
    for (const auto& a : ss)
      for (const auto& b : ss) {
        std::set<VarId> u = a;
        u.insert(b.begin(), b.end());
        next.insert(u);
      }
    if (next == ss) return ss;
    ss = std::move(next);
  }
}

}  // namespace

ShareAbs amgu_reference(VarId x, const Term& t, const ShareAbs& a) {
  if (a.is_bottom()) return a;
  SetOfSets sharing;
  for (uint64_t g : a.groups()) {
    VarList vars = a.group_vars(g);
    sharing.insert(std::set<VarId>(vars.begin(), vars.end()));
  }
  VarList tv_list = vars_of(t);
  std::set<VarId> tv(tv_list.begin(), tv_list.end());
  SetOfSets rel_x, rel_t, irrel;
  for (const auto& s : sharing) {
    bool rx = s.count(x) != 0;
    bool rt = false;
    for (VarId v : tv)
      if (s.count(v)) rt = true;
    if (rx) rel_x.insert(s);
    if (rt) rel_t.insert(s);
    if (!rx && !rt) irrel.insert(s);
  }
  SetOfSets sx = naive_star(rel_x);
  SetOfSets st = naive_star(rel_t);
  SetOfSets result = irrel;
  for (const auto& s1 : sx)
    for (const auto& s2 : st) {
      std::set<VarId> u = s1;
      u.insert(s2.begin(), s2.end());
      result.insert(u);
    }
  std::vector<VarList> groups;
  for (const auto& s : result) groups.emplace_back(s.begin(), s.end());
  return ShareAbs::make(a.domain(), groups);
}

}  // namespace share
}  // namespace shtrim
