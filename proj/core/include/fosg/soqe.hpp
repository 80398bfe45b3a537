#ifndef FOSG_SOQE_HPP
#define FOSG_SOQE_HPP

#include <string>
#include <vector>

#include "fosg/config.hpp"
#include "fosg/formula.hpp"
#include "fosg/game.hpp"
#include "fosg/wp.hpp"

namespace fosg {

// The (E, F, G, H) decomposition of a universal formula around one SO
// predicate B: recompose() is E ∧ (∀ȳ.F∨Bȳ) ∧ (∀ȳ'.G∨¬Bȳ') ∧ (∀ȳȳ'.H∨Bȳ∨¬Bȳ').
// F is over y_params, G over yp_params, H over both. Components without
// clauses are TRUE. `exact` is false when some clause carried more than one
// B-literal of a polarity (the rewrite is then a sound strengthening).
struct NormalForm {
  std::string pred;
  int arity = 0;
  std::vector<std::string> y_params, yp_params;
  Formula e = f_true(), f = f_true(), g = f_true(), h = f_true();
  bool exact = true;
};

Formula recompose(const NormalForm& nf);

struct ChoiceResult {
  Formula eliminated;              // FO formula without the predicate
  Formula choice;                  // weakest choice (¬E ∨ core) over `params`
  Formula choice_core;             // the choice without the ¬E disjunct; since E
                                   // is a B-free conjunct of the input, both
                                   // substitute identically into it
  std::vector<std::string> params; // free variables of `choice`
  bool exact = false;
  bool bounded = false; // exactness certified only on bounded models
  int k_used = 0;
};

// ∀A elimination for universal formulas (per-clause pairwise equality join).
Formula eliminate_forall(const Formula& phi, const std::string& a_pred,
                         const Config& cfg = Config::defaults());

// Appendix-G construction; pre: phi universal (prenex CNF is computed here).
// `hint` seeds the deterministic fresh parameter names.
NormalForm normal_form(const Formula& phi, const std::string& b_pred, int arity,
                       const std::string& hint = "", const Config& cfg = Config::defaults());

// Ackermann's lemma on simple normal forms (H ≡ ⊤):
// eliminated = E ∧ ∀ȳ.F∨G[ȳ/ȳ'], choice = ¬E ∨ G[ȳ/ȳ'].
ChoiceResult ackermann_eliminate(const NormalForm& nf);

// H^0 = ȳ≠ȳ'; H^k = ∀ȳ1.H^(k-1)[ȳ1/ȳ'] ∨ H[ȳ1/ȳ].
Formula h_power(const NormalForm& nf, int k);

// γ_k = ¬E ∨ ⋀_{i≤k} (G∘H^i)[ȳ/ȳ'].
Formula gamma(const NormalForm& nf, int k);

// Iterates γ_k until γ_k ⟹ γ_{k+1} (then exact) or max_k is reached (then a
// sound under-approximate choice with exact=false).
ChoiceResult gamma_iterate(const NormalForm& nf, int max_k,
                           const Config& cfg = Config::defaults());

// SO Hilbert choice read off the Appendix-H derivation, discharged by an
// inner gamma_iterate. Sound for any normal form; exact iff the inner
// elimination is exact.
ChoiceResult general_choice(const NormalForm& nf, int max_k,
                            const Config& cfg = Config::defaults());

// Thm. t:positive syntactic class: every image containing B is
// quantifier-free and its CNF has no mixed-polarity B clause.
bool is_ackermannian(const std::string& b_pred, const Substitution& theta,
                     const Config& cfg = Config::defaults());

// Weakest strategy extraction on a B-edge against the invariant map.
// Returns the weakest choice for B (over formal params y1..yr) and the
// eliminated precondition of the edge.
struct StrategyExtraction {
  Formula psi_b;    // weakest choice
  Formula residual; // eliminated precondition
  bool exact = true;
};
StrategyExtraction weakest_strategy_ackermannian(const Game& g, const AssertionMap& psi,
                                                 const Edge& e,
                                                 const Config& cfg = Config::defaults());

// Replace every atom of `pred` by `body` with formal `params` instantiated.
Formula substitute_predicate(const Formula& f, const std::string& pred,
                             const std::vector<std::string>& params, const Formula& body);

// ∀v.(D ∨ v≠t) collapses to D[t/v]; applied repeatedly to make guard-rewritten
// formulas readable. Equivalence-preserving.
Formula instantiate_guards(const Formula& f);

} // namespace fosg

#endif
