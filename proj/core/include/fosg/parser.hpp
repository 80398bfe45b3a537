#ifndef FOSG_PARSER_HPP
#define FOSG_PARSER_HPP

#include <map>
#include <string>

#include "fosg/formula.hpp"
#include "fosg/game.hpp"
#include "fosg/selfcomp.hpp"
#include "fosg/signature.hpp"

namespace fosg {

// Game file (see README for the format). Throws parse_error / semantic_error.
Game parse_game(const std::string& text);

// Standalone formula over a known signature. `free_vars` lists variable names
// that may occur unbound (e.g. formal parameters); everything else must be a
// declared constant, a declared predicate, or bound by a quantifier.
Formula parse_formula(const std::string& text, const Signature& sig,
                      const std::vector<std::string>& free_vars = {});

// Noninterference spec file, resolved against the game it accompanies.
NiSpec parse_nispec(const std::string& text, const Game& g);

// Invariant file: `invariant <node>: <formula>;` and `invariant all: ...;`
std::map<std::string, Formula> parse_invariant(const std::string& text, const Game& g);

// Strategy file: `strategy B1(y1, y2) := <formula>;`
Strategy parse_strategy(const std::string& text, const Game& g);

} // namespace fosg

#endif
