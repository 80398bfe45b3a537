#include "fosg/sat.hpp"

#include <algorithm>
#include <cstdlib>

namespace fosg {

void SatSolver::add_clause(std::vector<int> lits) {
  std::sort(lits.begin(), lits.end(), [](int a, int b) {
    int va = std::abs(a), vb = std::abs(b);
    return va != vb ? va < vb : a < b;
  });
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 0; i + 1 < lits.size(); ++i)
    if (lits[i] == -lits[i + 1]) return; // tautology
  if (lits.empty()) {
    trivially_unsat_ = true;
    return;
  }
  int idx = static_cast<int>(clauses_.size());
  for (int l : lits) {
    size_t v = static_cast<size_t>(std::abs(l));
    if (occurs_pos_.size() <= v) {
      occurs_pos_.resize(v + 1);
      occurs_neg_.resize(v + 1);
    }
    (l > 0 ? occurs_pos_ : occurs_neg_)[v].push_back(idx);
  }
  clauses_.push_back(std::move(lits));
}

void SatSolver::assign(int lit, std::vector<int>& trail) {
  assign_[static_cast<size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
  trail.push_back(lit);
}

void SatSolver::unassign(int lit) { assign_[static_cast<size_t>(std::abs(lit))] = 0; }

bool SatSolver::propagate(std::vector<int>& trail, size_t& qhead) {
  while (qhead < trail.size()) {
    int lit = trail[qhead++];
    size_t v = static_cast<size_t>(std::abs(lit));
    if (v >= occurs_pos_.size()) continue;
    // clauses where the complement occurs may have become unit or empty
    const auto& watch = lit > 0 ? occurs_neg_[v] : occurs_pos_[v];
    for (int ci : watch) {
      const auto& c = clauses_[static_cast<size_t>(ci)];
      int unassigned = 0, last = 0;
      bool satisfied = false;
      for (int l : c) {
        int8_t a = assign_[static_cast<size_t>(std::abs(l))];
        if (a == 0) {
          ++unassigned;
          last = l;
          if (unassigned > 1) break;
        } else if ((a == 1) == (l > 0)) {
          satisfied = true;
          break;
        }
      }
      if (satisfied || unassigned > 1) continue;
      if (unassigned == 0) return false; // conflict
      assign(last, trail);
    }
  }
  return true;
}

std::optional<bool> SatSolver::solve(int64_t node_budget) {
  if (trivially_unsat_) return false;
  size_t nv = static_cast<size_t>(num_vars_);
  assign_.assign(nv + 1, 0);
  if (occurs_pos_.size() <= nv) {
    occurs_pos_.resize(nv + 1);
    occurs_neg_.resize(nv + 1);
  }

  struct Frame {
    int var;
    bool tried_both;
    size_t trail_size;
  };
  std::vector<Frame> stack;
  std::vector<int> trail;
  size_t qhead = 0;
  int64_t nodes = 0;

  // top-level units
  for (auto& c : clauses_)
    if (c.size() == 1) {
      int8_t a = assign_[static_cast<size_t>(std::abs(c[0]))];
      if (a == 0) assign(c[0], trail);
      else if ((a == 1) != (c[0] > 0)) return false;
    }

  auto backtrack = [&]() -> bool {
    while (!stack.empty()) {
      Frame& f = stack.back();
      while (trail.size() > f.trail_size) {
        unassign(trail.back());
        trail.pop_back();
      }
      qhead = trail.size();
      if (!f.tried_both) {
        f.tried_both = true;
        assign(-f.var, trail); // second branch: false
        return true;
      }
      stack.pop_back();
    }
    return false;
  };

  if (!propagate(trail, qhead)) return false;
  while (true) {
    if (++nodes > node_budget) return std::nullopt;
    // fixed order: first unassigned variable
    int pick = 0;
    for (int v = 1; v <= num_vars_; ++v)
      if (assign_[static_cast<size_t>(v)] == 0) { pick = v; break; }
    if (pick == 0) {
      model_.assign(assign_.begin(), assign_.end());
      return true;
    }
    stack.push_back({pick, false, trail.size()});
    assign(pick, trail);
    while (!propagate(trail, qhead)) {
      if (!backtrack()) return false;
    }
  }
}

} // namespace fosg
