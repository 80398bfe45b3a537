#ifndef FOSG_SAT_HPP
#define FOSG_SAT_HPP

#include <optional>
#include <vector>

#include "fosg/config.hpp"

namespace fosg {

// Small deterministic DPLL solver: unit propagation via occurrence lists,
// chronological backtracking, branching on the first unassigned variable.
// Literals are 1-based: +v / -v. Variable 0 is unused.
class SatSolver {
public:
  int new_var() { return ++num_vars_; }
  int num_vars() const { return num_vars_; }

  // Empty clause makes the instance trivially unsat.
  void add_clause(std::vector<int> lits);
  void add_unit(int lit) { add_clause({lit}); }

  // nullopt on resource exhaustion (node budget), otherwise sat flag.
  std::optional<bool> solve(int64_t node_budget = Config::defaults().sat_conflict_budget);

  // Valid after solve() returned true.
  bool value(int var) const { return model_[static_cast<size_t>(var)] == 1; }

private:
  bool propagate(std::vector<int>& trail, size_t& qhead);
  void assign(int lit, std::vector<int>& trail);
  void unassign(int lit);

  int num_vars_ = 0;
  bool trivially_unsat_ = false;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> occurs_pos_, occurs_neg_; // var -> clause indices
  std::vector<int8_t> assign_; // 0 unassigned, 1 true, -1 false
  std::vector<int8_t> model_;
};

} // namespace fosg

#endif
