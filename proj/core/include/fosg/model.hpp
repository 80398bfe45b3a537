#ifndef FOSG_MODEL_HPP
#define FOSG_MODEL_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fosg/formula.hpp"

namespace fosg {

// Finite FO structure over universe {0,...,size-1}: a constant valuation and
// one relation table per predicate.
struct Model {
  int size = 1;
  std::map<std::string, int> constants;
  std::map<std::string, std::set<std::vector<int>>> relations;

  bool holds(const std::string& pred, const std::vector<int>& tuple) const {
    auto it = relations.find(pred);
    return it != relations.end() && it->second.count(tuple) != 0;
  }
};

using VarAssignment = std::map<std::string, int>;

// Tarskian evaluation. SO quantifiers are evaluated by enumerating all
// relation tables of the bound arity; throws budget_error when a table
// exceeds the given log2 budget. Counting quantifiers count witnesses.
bool eval(const Formula& f, const Model& m, const VarAssignment& va, int so_atom_budget = 24);

// Enumerate all interpretations of the listed (name, arity) predicates over
// universes of size 1..max_size, together with all valuations of the listed
// constants, calling `visit`; stops early when visit returns false.
// Relation tables not listed stay absent (false everywhere).
bool enumerate_models(const std::vector<std::pair<std::string, int>>& preds,
                      const std::vector<std::string>& constants, int max_size,
                      const std::function<bool(const Model&)>& visit,
                      int atom_budget = 24);

// All tuples over {0..size-1}^arity in lexicographic order.
std::vector<std::vector<int>> all_tuples(int size, int arity);

} // namespace fosg

#endif
