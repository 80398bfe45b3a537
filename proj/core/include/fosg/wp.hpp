#ifndef FOSG_WP_HPP
#define FOSG_WP_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fosg/config.hpp"
#include "fosg/formula.hpp"
#include "fosg/game.hpp"

namespace fosg {

// Node-indexed formula map, total over the game's nodes.
using AssertionMap = std::map<std::string, Formula>;

struct IterationStep {
  int h = 0;
  AssertionMap psi;
  std::map<std::string, bool> changed;
  double elapsed_ms = 0.0;
};

using IterationTrace = std::vector<IterationStep>;

enum class IterStatus { Fixed, CapReached };

struct IterationResult {
  AssertionMap psi;
  IterationTrace trace;
  IterStatus status = IterStatus::CapReached;
  // true when some stabilization test fell back to bounded models
  bool bounded_confidence = false;
};

// ⟦e⟧⊤ψ: ψθ under the edge substitution, wrapped in ∀A_e / ∃B_e when the
// edge carries an input predicate.
Formula wp_edge(const Game& g, const Edge& e, const Formula& psi);

// Right fold of wp_edge over a composable path; empty path returns psi.
Formula wp_path(const Game& g, const std::vector<const Edge*>& path, const Formula& psi);

// Discharges the SO quantifier wp_edge introduced; returns an equivalent (or
// sound strengthened) FO formula for the precondition of `e`.
using EliminateFn = std::function<Formula(const Game&, const Edge&, const Formula&)>;
// Keeps iterates universal (identity when already universal).
using StrengthenFn = std::function<Formula(const Formula&)>;

// The Ψ^(h) conjunction iteration with per-node worklist. Stabilization is
// detected per node: syntactic equality, then BSR validity of the implication
// when both sides stay universal, then bounded-model equivalence (flagging
// the result as bounded-confidence).
IterationResult iterate(const Game& g, const EliminateFn& eliminate,
                        const StrengthenFn& strengthen, int max_h,
                        const Config& cfg = Config::defaults(),
                        const AssertionMap* initial = nullptr);

enum class Verdict { Safe, Unsafe, Unknown };

struct VerdictResult {
  Verdict verdict = Verdict::Unknown;
  bool bounded_confidence = false;
  std::optional<Model> witness; // initial-state countermodel for Unsafe
  int refuted_at_h = -1;
  std::string diagnostic;
};

// Thm. tapprox: safe iff Init implies Ψ^(h)[start] for all h. Safe requires a
// fixed status; unsafe is certified by a ground model of Init ∧ ¬Ψ[start].
VerdictResult safety_verdict(const Game& g, const IterationResult& iter,
                             const Config& cfg = Config::defaults());

} // namespace fosg

#endif
