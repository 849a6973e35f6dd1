#include "shtrim/liveness.hpp"

namespace shtrim {

VarList live_vars(const VarList& live, const Literal& lit) {
  return subtract(vars_of(lit), live);
}

VarList dead_vars(const VarList& live, const VarList& head_vars,
                  std::span<const Literal> remaining) {
  VarList fut;
  for (const Literal& lit : remaining) fut = unite(fut, vars_of(lit));
  return subtract(subtract(live, fut), head_vars);
}

}  // namespace shtrim
