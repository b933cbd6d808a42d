#pragma once

#include <argil/asp/lexer.hpp>
#include <argil/asp/syntax.hpp>

#include <string_view>
#include <vector>

namespace argil::asp {

//! Parses an atom at the lexer position: `name` or `name(t1,...,tn)`.
Atom parse_atom(Lexer &lexer);

//! Parses `head :- b1, ..., not c1, ... .`, constraints, and heuristic statements.
//!
//! Only the heuristic modifier `[1@1, false]` is supported.
Program parse_program(std::string_view text);

//! Parses a sequence of ground facts `p(a,b).`.
std::vector<Atom> parse_facts(std::string_view text);

} // namespace argil::asp
