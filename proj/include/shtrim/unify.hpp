#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "shtrim/term.hpp"

namespace shtrim {

using Binding = std::pair<VarId, Term>;

/// Syntactic unification with occurs check. On success returns the solved
/// form: bindings in first-bind order, left-hand variables distinct, and no
/// bound variable occurring in any right-hand side (the substitution is
/// idempotent). Failure (clash or cyclic binding) returns nullopt.
std::optional<std::vector<Binding>> unify_solved_form(const Term& t1, const Term& t2);

/// Applies a solved form to a term.
Term apply_bindings(const Term& t, const std::vector<Binding>& bindings);

}  // namespace shtrim
