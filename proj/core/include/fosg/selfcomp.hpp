#ifndef FOSG_SELFCOMP_HPP
#define FOSG_SELFCOMP_HPP

#include <map>
#include <set>
#include <string>

#include "fosg/formula.hpp"
#include "fosg/game.hpp"

namespace fosg {

// Noninterference specification for stubborn agents: observer constant,
// secret input predicates with per-predicate declassification conditions
// (free variables: the secret's formal parameters y1..yr and the observer),
// and optional per-node admissible predicate sets.
struct NiSpec {
  std::string observer;
  std::map<std::string, Formula> declass; // secret predicate -> Δ_{O,a}
  std::map<std::string, std::set<std::string>> admissible;
};

struct ComposedGame {
  Game game;
  // original state predicate -> primed copy name
  std::map<std::string, std::string> primed;
  // auxiliary state predicates introduced to keep one input per edge
  std::set<std::string> aux_preds;
  NiSpec spec;
};

// Two-track self-composition for stubborn agents. Adds primed copies of all
// state predicates, shares A inputs across tracks, and muxes each secret
// input through the declassification condition on the primed track. Edges
// reading a secret are split through a fresh auxiliary node so every edge
// keeps a single input predicate. Init becomes Init ∧ (R ↔ R') for all R;
// the assertion at every node is the observer-equivalence formula.
ComposedGame self_compose(const Game& g, const NiSpec& spec);

struct AdmissibilityReport {
  bool admissible = false;
  std::string diagnostic;
  // per node, the predicate set whose track-equivalence was certified
  std::map<std::string, std::set<std::string>> certified;
};

// Checks that each strategy body only mentions predicates from the node's
// admissible set and that the corresponding equivalences are inductive
// invariants of the composed game under σ. When spec.admissible is empty the
// sets are computed as greatest fixpoints of the certification.
AdmissibilityReport check_admissible(const ComposedGame& cg, const Strategy& sigma);

// Drops primes from strategy bodies; requires check_admissible to pass.
Strategy translate_strategy_back(const ComposedGame& cg, const Strategy& sigma);

} // namespace fosg

#endif
