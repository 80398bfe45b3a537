#ifndef FOSG_NORMALIZE_HPP
#define FOSG_NORMALIZE_HPP

#include <optional>
#include <string>
#include <vector>

#include "fosg/config.hpp"
#include "fosg/formula.hpp"

namespace fosg {

// Negation normal form. Pre: no SO quantifiers. Counting quantifiers are
// treated as atoms of their own polarity (negations stay on them).
Formula to_nnf(const Formula& f);

// One literal of a quantifier-free matrix: a possibly negated atom or equality.
struct Lit {
  bool neg = false;
  bool is_eq = false;
  std::string pred; // empty for equalities
  Terms args;

  friend bool operator==(const Lit& a, const Lit& b) {
    return a.neg == b.neg && a.is_eq == b.is_eq && a.pred == b.pred && a.args == b.args;
  }
};
int compare(const Lit& a, const Lit& b);
struct LitLess {
  bool operator()(const Lit& a, const Lit& b) const { return compare(a, b) < 0; }
};

// Clause: disjunction of literals, kept sorted and duplicate-free.
using Clause = std::vector<Lit>;

struct Quantifier {
  bool universal = true;
  std::string var;
};

// Prenex CNF: quantifier prefix plus clause matrix. An empty clause list means
// TRUE; a clause list containing an empty clause means FALSE.
struct PrenexCnf {
  std::vector<Quantifier> prefix;
  std::vector<Clause> clauses;

  bool is_true() const { return clauses.empty(); }
  bool is_false() const {
    for (auto& c : clauses)
      if (c.empty()) return true;
    return false;
  }
};

// Equivalence-preserving (distributive) prenex CNF. Pre: no SO quantifiers,
// no counting quantifiers. Throws budget_error when the matrix would exceed
// cfg.cnf_clause_budget clauses. Clauses are deduplicated, tautologies and
// false literals dropped, and the matrix canonically sorted.
PrenexCnf to_prenex_cnf(const Formula& f, const Config& cfg = Config::defaults());

Formula lit_to_formula(const Lit& l);
Formula clause_to_formula(const Clause& c);
Formula cnf_to_formula(const PrenexCnf& cnf);
std::optional<Lit> formula_to_lit(const Formula& f);

// Normalize one clause: sort, dedup, drop trivially-false literals (t != t),
// return nullopt when the clause is a tautology (t = t, or P and !P).
std::optional<Clause> normalize_clause(Clause c);

// Sort clause set, dedup, drop subsumed clauses.
std::vector<Clause> normalize_clause_set(std::vector<Clause> cs);

// Cheap equivalence-preserving cleanup: constant absorption, x=x elimination,
// literal dedup inside clauses, subsumed-clause removal in conjunctions of
// clauses, unused-binder dropping, and canonical child ordering. Idempotent.
Formula simplify(const Formula& f);

} // namespace fosg

#endif
