#pragma once

#include <map>
#include <string>
#include <vector>

#include "shtrim/term.hpp"

namespace shtrim {

/// Summaries for out-of-scope predicates: the 1-based argument positions the
/// builtin is known to ground. Everything else falls back to topmost.
class BuiltinTable {
public:
  void add(const PredKey& key, std::vector<int> grounded_positions);
  const std::vector<int>* lookup(const PredKey& key) const;
  bool empty() const { return table_.empty(); }

  /// Loads a JSON object mapping "name/arity" to arrays of positions, e.g.
  /// {"numbervars/3": [1,3]}.
  static BuiltinTable load_json(const std::string& json_text);

private:
  std::map<PredKey, std::vector<int>> table_;
};

}  // namespace shtrim
