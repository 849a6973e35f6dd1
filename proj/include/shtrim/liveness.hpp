#pragma once

#include <span>

#include "shtrim/term.hpp"

namespace shtrim {

/// Variables of the literal that are not yet live.
VarList live_vars(const VarList& live, const Literal& lit);

/// Live variables that occur neither in the remaining body suffix nor in the
/// head. `remaining` is the suffix strictly after the current literal. The
/// rescan over the suffix is kept deliberately simple; callers may cache
/// last-occurrence indices but must agree with this definition.
VarList dead_vars(const VarList& live, const VarList& head_vars,
                  std::span<const Literal> remaining);

}  // namespace shtrim
