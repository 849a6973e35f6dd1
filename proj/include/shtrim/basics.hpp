#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shtrim {

/// Identifies a variable occurrence class. Parsed clauses number their
/// variables densely from 0; analysis-time instances get fresh ids from a
/// counter, so ids from different spaces must never be mixed in one
/// abstraction without an explicit renaming.
using VarId = uint32_t;

constexpr VarId invalid_var = 0xffffffffu;

/// Resolves a variable id to its display name.
using NameFn = std::function<std::string(VarId)>;

/// Sorted, duplicate-free list of variable ids. All domain operations keep
/// this representation canonical.
using VarList = std::vector<VarId>;

void sort_unique(VarList& vs);
VarList intersect(const VarList& a, const VarList& b);
VarList unite(const VarList& a, const VarList& b);
VarList subtract(const VarList& a, const VarList& b);
bool contains(const VarList& a, VarId v);
bool subset_of(const VarList& a, const VarList& b);
bool disjoint(const VarList& a, const VarList& b);

struct SourcePos {
  int line = 0;
  int column = 0;
};

class parse_error : public std::runtime_error {
public:
  parse_error(SourcePos pos, const std::string& msg)
      : std::runtime_error(format(pos, msg)), pos_(pos) {}
  SourcePos pos() const { return pos_; }

private:
  static std::string format(SourcePos pos, const std::string& msg);
  SourcePos pos_;
};

/// Cooperative interruption raised from inside the fixpoint loops.
enum class InterruptKind { timeout, size_guard, iteration_guard };

class analysis_interrupt : public std::runtime_error {
public:
  explicit analysis_interrupt(InterruptKind kind)
      : std::runtime_error(describe(kind)), kind_(kind) {}
  InterruptKind kind() const { return kind_; }

private:
  static const char* describe(InterruptKind kind);
  InterruptKind kind_;
};

}  // namespace shtrim
