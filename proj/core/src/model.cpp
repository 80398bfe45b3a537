#include "fosg/model.hpp"

#include <cmath>
#include <functional>
#include <optional>

#include "fosg/errors.hpp"

namespace fosg {

std::vector<std::vector<int>> all_tuples(int size, int arity) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<size_t>(arity), 0);
  if (arity == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(cur);
    int i = arity - 1;
    while (i >= 0 && ++cur[static_cast<size_t>(i)] == size) {
      cur[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

namespace {

int eval_term(const Term& t, const Model& m, const VarAssignment& va) {
  if (t.is_var()) {
    auto it = va.find(t.name);
    if (it == va.end()) throw error("unassigned variable " + t.name + " in evaluation");
    return it->second;
  }
  auto it = m.constants.find(t.name);
  if (it == m.constants.end()) throw error("unvalued constant " + t.name + " in evaluation");
  return it->second;
}

bool eval_rec(const Formula& f, const Model& m, VarAssignment& va, int budget);

// Enumerate tables for one predicate and evaluate the body under each.
bool eval_so(const Formula& f, const Model& m, VarAssignment& va, int budget) {
  const bool is_exists = f.is(Formula::Kind::SoExists);
  int arity = f.so_arity();
  auto tuples = all_tuples(m.size, arity);
  if (static_cast<int>(tuples.size()) > budget)
    throw budget_error("SO enumeration over " + std::to_string(tuples.size()) +
                       " atoms exceeds budget " + std::to_string(budget));
  uint64_t total = 1ull << tuples.size();
  Model mm = m;
  for (uint64_t mask = 0; mask < total; ++mask) {
    std::set<std::vector<int>> table;
    for (size_t i = 0; i < tuples.size(); ++i)
      if (mask & (1ull << i)) table.insert(tuples[i]);
    mm.relations[f.name()] = std::move(table);
    bool v = eval_rec(f.kid(), mm, va, budget);
    if (is_exists && v) return true;
    if (!is_exists && !v) return false;
  }
  return !is_exists;
}

bool eval_rec(const Formula& f, const Model& m, VarAssignment& va, int budget) {
  switch (f.kind()) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom: {
      std::vector<int> tuple;
      tuple.reserve(f.args().size());
      for (auto& t : f.args()) tuple.push_back(eval_term(t, m, va));
      return m.holds(f.name(), tuple);
    }
    case Formula::Kind::Eq:
      return eval_term(f.args()[0], m, va) == eval_term(f.args()[1], m, va);
    case Formula::Kind::Not:
      return !eval_rec(f.kid(), m, va, budget);
    case Formula::Kind::And:
      for (auto& k : f.kids())
        if (!eval_rec(k, m, va, budget)) return false;
      return true;
    case Formula::Kind::Or:
      for (auto& k : f.kids())
        if (eval_rec(k, m, va, budget)) return true;
      return false;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const bool is_forall = f.is(Formula::Kind::Forall);
      auto saved = va.find(f.name()) != va.end() ? std::optional<int>(va[f.name()]) : std::nullopt;
      for (int u = 0; u < m.size; ++u) {
        va[f.name()] = u;
        bool v = eval_rec(f.kid(), m, va, budget);
        if (is_forall && !v) { if (saved) va[f.name()] = *saved; else va.erase(f.name()); return false; }
        if (!is_forall && v) { if (saved) va[f.name()] = *saved; else va.erase(f.name()); return true; }
      }
      if (saved) va[f.name()] = *saved; else va.erase(f.name());
      return is_forall;
    }
    case Formula::Kind::CountExists: {
      auto saved = va.find(f.name()) != va.end() ? std::optional<int>(va[f.name()]) : std::nullopt;
      int hits = 0;
      for (int u = 0; u < m.size && hits < f.count(); ++u) {
        va[f.name()] = u;
        if (eval_rec(f.kid(), m, va, budget)) ++hits;
      }
      if (saved) va[f.name()] = *saved; else va.erase(f.name());
      return hits >= f.count();
    }
    case Formula::Kind::SoForall:
    case Formula::Kind::SoExists:
      return eval_so(f, m, va, budget);
  }
  throw error("unreachable formula kind in eval");
}

} // namespace

bool eval(const Formula& f, const Model& m, const VarAssignment& va, int so_atom_budget) {
  VarAssignment scratch = va;
  return eval_rec(f, m, scratch, so_atom_budget);
}

bool enumerate_models(const std::vector<std::pair<std::string, int>>& preds,
                      const std::vector<std::string>& constants, int max_size,
                      const std::function<bool(const Model&)>& visit, int atom_budget) {
  for (int n = 1; n <= max_size; ++n) {
    // Count ground atoms to guard the enumeration.
    int64_t atoms = 0;
    for (auto& [_, ar] : preds) {
      int64_t cnt = 1;
      for (int i = 0; i < ar; ++i) cnt *= n;
      atoms += cnt;
    }
    if (atoms > atom_budget)
      throw budget_error("model enumeration over " + std::to_string(atoms) +
                         " ground atoms exceeds budget " + std::to_string(atom_budget));

    std::vector<std::pair<std::string, std::vector<std::vector<int>>>> slots;
    for (auto& [p, ar] : preds) slots.emplace_back(p, all_tuples(n, ar));

    std::vector<int> cval(constants.size(), 0);
    while (true) {
      // one big bitmask over all ground atoms
      uint64_t total = 1ull << static_cast<uint64_t>(atoms);
      for (uint64_t mask = 0; mask < total; ++mask) {
        Model m;
        m.size = n;
        for (size_t ci = 0; ci < constants.size(); ++ci) m.constants[constants[ci]] = cval[ci];
        uint64_t bit = 0;
        for (auto& [p, tuples] : slots) {
          std::set<std::vector<int>> table;
          for (auto& t : tuples) {
            if (mask & (1ull << bit)) table.insert(t);
            ++bit;
          }
          m.relations[p] = std::move(table);
        }
        if (!visit(m)) return false;
      }
      // next constant valuation
      size_t i = 0;
      while (i < cval.size() && ++cval[i] == n) cval[i++] = 0;
      if (i == cval.size()) break;
    }
  }
  return true;
}

} // namespace fosg
