#ifndef FOSG_DECIDE_HPP
#define FOSG_DECIDE_HPP

#include <optional>
#include <string>
#include <variant>

#include "fosg/config.hpp"
#include "fosg/formula.hpp"
#include "fosg/model.hpp"

namespace fosg {

// Expand counting quantifiers to plain FO (definition of the counting
// quantifier; fresh variables drawn from the reserved namespace).
Formula expand_counting(const Formula& f);

struct BsrResult {
  bool valid = false;
  std::optional<Model> countermodel;
};

// Validity in the Bernays-Schönfinkel-Ramsey fragment: ¬f must prenex to
// ∃*∀* with no SO quantifiers. Decides by grounding over the small-model
// bound max(1, #constants + #leading existentials). Exact.
BsrResult bsr_valid(const Formula& f, const Config& cfg = Config::defaults());

// True when ¬f is prenexable to ∃*∀* (so bsr_valid applies).
bool in_bsr(const Formula& f);

struct BoundedSatResult {
  bool sat = false;
  std::optional<Model> model; // set when sat
};

// Propositional search for a model of f over universes 1..max_size.
// SO ∃ in positive / SO ∀ in negative positions become free table variables;
// the opposite polarities are expanded when small enough (budget-guarded).
// Sound for sat; "no model up to bound" otherwise.
BoundedSatResult bounded_sat(const Formula& f, int max_size,
                             const Config& cfg = Config::defaults());

// True iff f1 <-> f2 holds in every model of size 1..max_size under every
// valuation of constants; free variables are treated as constants.
bool equivalent_bounded(const Formula& f1, const Formula& f2, int max_size,
                        const Config& cfg = Config::defaults());

// Validity of f over all models of size 1..max_size (free vars as constants).
bool valid_bounded(const Formula& f, int max_size, const Config& cfg = Config::defaults());

// implied = valid(lhs -> rhs), routed through BSR when possible.
struct ImplicationResult {
  bool holds = false;
  bool exact = true; // false when only bounded-model checked
};
ImplicationResult implies_checked(const Formula& lhs, const Formula& rhs,
                                  const Config& cfg = Config::defaults());
ImplicationResult equivalent_checked(const Formula& lhs, const Formula& rhs,
                                     const Config& cfg = Config::defaults());

} // namespace fosg

#endif
