#pragma once

#include <string>

#include "shtrim/term.hpp"

namespace shtrim {

/// Parses the analyzed Horn-clause subset: facts, rules with comma-separated
/// bodies, infix '=' unification, list syntax, integers and atoms. Entry
/// directives:
///   :- entry p(X,Y).
///   :- entry p(X,Y) sharing [[X],[X,Y]].
/// Throws parse_error with line/column on malformed input. Predicates are
/// keyed by name/arity, so same-name clauses of different arity coexist.
Program parse_program(const std::string& source);

}  // namespace shtrim
