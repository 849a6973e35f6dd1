#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shtrim/term.hpp"

namespace shtrim {

struct GenParams {
  uint64_t seed = 1;
  int modules = 10;
  int predicates_per_module = 3;
  int max_clauses_per_pred = 2;
  int max_body_len = 8;
  int max_arity = 3;
  int max_vars_per_clause = 10;
  /// Chance (percent) that a term position reuses an existing variable
  /// instead of introducing a new one.
  int reuse_percent = 55;
  int recursive_percent = 30;
  int unify_percent = 45;
  int unknown_percent = 15;
};

/// Deterministic pseudo-random programs in the subset grammar; the same seed
/// yields byte-identical sources.
std::vector<std::string> generate_corpus(const GenParams& params);

/// One clause with k single-use temporaries, each sharing with the head
/// through an unknown call: classic analysis drags all k variables to the
/// end while only a constant number is ever live.
std::string generate_dead_temporary(uint64_t seed, int k);

}  // namespace shtrim
