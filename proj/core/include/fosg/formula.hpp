#ifndef FOSG_FORMULA_HPP
#define FOSG_FORMULA_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fosg/term.hpp"

namespace fosg {

// Immutable FO/SO formula tree. Handles are cheap to copy and share subtrees.
//
// Node kinds:
//   False/True            logical constants
//   Atom                  P(t1,...,tn), n >= 0
//   Eq                    t1 = t2, stored with t1 <= t2; disequality is Not(Eq)
//   Not                   negation
//   And/Or                n-ary, flattened by the factories
//   Forall/Exists         FO quantifiers, one variable each
//   SoForall/SoExists     SO quantifiers over a predicate of fixed arity
//   CountExists           counting quantifier "at least n witnesses"
class Formula {
public:
  enum class Kind : uint8_t {
    False, True, Atom, Eq, Not, And, Or,
    Forall, Exists, SoForall, SoExists, CountExists
  };

  struct Node {
    Kind kind;
    std::string name;          // Atom: predicate; quantifiers: variable/predicate name
    int so_arity = -1;         // SoForall/SoExists
    int count = 0;             // CountExists: n in "at least n"
    Terms args;                // Atom arguments; Eq uses args[0], args[1]
    std::vector<Formula> kids; // subformulas
  };

  Formula() = default; // empty handle; only produced by default construction

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  int so_arity() const { return node_->so_arity; }
  int count() const { return node_->count; }
  const Terms& args() const { return node_->args; }
  const std::vector<Formula>& kids() const { return node_->kids; }
  const Formula& kid(size_t i = 0) const { return node_->kids[i]; }
  bool valid() const { return node_ != nullptr; }

  bool is(Kind k) const { return node_->kind == k; }
  bool is_true() const { return is(Kind::True); }
  bool is_false() const { return is(Kind::False); }
  bool is_quant() const {
    Kind k = kind();
    return k == Kind::Forall || k == Kind::Exists || k == Kind::SoForall ||
           k == Kind::SoExists || k == Kind::CountExists;
  }
  bool is_fo_quant() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
  bool is_so_quant() const { return kind() == Kind::SoForall || kind() == Kind::SoExists; }

  static Formula make(Node n);

private:
  std::shared_ptr<const Node> node_;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

// --- factories (lightly normalizing: flatten and/or, absorb constants,
// --- order equality operands, collapse double negation) ---
Formula f_true();
Formula f_false();
Formula atom(std::string pred, Terms args);
Formula eq(Term a, Term b);
Formula neq(Term a, Term b);
Formula lnot(Formula f);
Formula land(std::vector<Formula> fs);
Formula lor(std::vector<Formula> fs);
Formula land2(Formula a, Formula b);
Formula lor2(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula forall(std::string var, Formula body);
Formula exists(std::string var, Formula body);
Formula forall_many(const std::vector<std::string>& vars, Formula body);
Formula exists_many(const std::vector<std::string>& vars, Formula body);
Formula so_forall(std::string pred, int arity, Formula body);
Formula so_exists(std::string pred, int arity, Formula body);
Formula count_exists(int n, std::string var, Formula body);

// Structural total order / equality / hash.
int compare(const Formula& a, const Formula& b);
bool equal(const Formula& a, const Formula& b);
size_t hash_value(const Formula& f);

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

// --- queries ---
std::set<std::string> free_vars(const Formula& f);
std::set<std::string> bound_vars(const Formula& f);
std::set<std::string> constants_of(const Formula& f);
// All predicate names occurring in atoms (not SO binders).
std::set<std::string> preds_of(const Formula& f);
// Predicate name -> arity for every atom occurrence, SO-bound ones excluded.
std::map<std::string, int> pred_arities(const Formula& f);
bool mentions_pred(const Formula& f, const std::string& pred);
size_t node_count(const Formula& f);
// True when all FO quantifiers are universal and appear in positive positions
// (negation-normal reading), and no SO quantifier or counting node occurs.
bool is_universal_fo(const Formula& f);
bool has_so_quant(const Formula& f);
bool has_counting(const Formula& f);

// Replace free occurrences of variables by terms, capture-avoiding: bound
// variables are renamed with `fresh` when they would capture a substituted term.
Formula substitute_terms(const Formula& f, const std::map<std::string, Term>& map,
                         const std::function<std::string()>& fresh);

// Rename every bound variable to a fresh name so that binders are pairwise
// distinct and disjoint from free variables (the no-shadowing normalization).
Formula rename_bound_apart(const Formula& f, const std::function<std::string()>& fresh);

// Monotone counter of fresh names with the reserved "_" prefix (rejected by
// the parser, so generated names never collide with user input).
class FreshVars {
public:
  explicit FreshVars(std::string prefix = "_v") : prefix_(std::move(prefix)) {}
  std::string next() { return prefix_ + std::to_string(counter_++); }
  std::function<std::string()> fn() {
    return [this]() { return next(); };
  }

private:
  std::string prefix_;
  uint64_t counter_ = 0;
};

// Deterministic variable sequence y1..yr used for substitution formal
// parameters and strategy bodies.
std::vector<std::string> formal_params(int arity, const std::string& prefix = "y");

} // namespace fosg

#endif
