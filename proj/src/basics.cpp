#include "shtrim/basics.hpp"

#include <algorithm>

namespace shtrim {

void sort_unique(VarList& vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

VarList intersect(const VarList& a, const VarList& b) {
  VarList out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VarList unite(const VarList& a, const VarList& b) {
  VarList out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VarList subtract(const VarList& a, const VarList& b) {
  VarList out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const VarList& a, VarId v) {
  return std::binary_search(a.begin(), a.end(), v);
}

bool subset_of(const VarList& a, const VarList& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const VarList& a, const VarList& b) {
  return intersect(a, b).empty();
}

std::string parse_error::format(SourcePos pos, const std::string& msg) {
  return "parse error at " + std::to_string(pos.line) + ":" + std::to_string(pos.column) +
         ": " + msg;
}

const char* analysis_interrupt::describe(InterruptKind kind) {
  switch (kind) {
    case InterruptKind::timeout: return "analysis timed out";
    case InterruptKind::size_guard: return "abstraction size guard exceeded";
    case InterruptKind::iteration_guard: return "fixpoint iteration guard exceeded";
  }
  return "interrupted";
}

}  // namespace shtrim
