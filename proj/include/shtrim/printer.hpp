#pragma once

#include <functional>
#include <string>

#include "shtrim/term.hpp"

namespace shtrim {

std::string print_term(const Term& t, const NameFn& names);
std::string print_literal(const Literal& lit, const NameFn& names);
std::string print_clause(const Clause& c);
/// Emits the program as parseable source text, one clause per line, entries
/// last. Reparsing the output yields a structurally equal program.
std::string print_program(const Program& p);

}  // namespace shtrim
