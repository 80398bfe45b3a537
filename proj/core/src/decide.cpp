#include "fosg/decide.hpp"

#include <algorithm>

#include "fosg/errors.hpp"
#include "fosg/normalize.hpp"
#include "fosg/sat.hpp"

namespace fosg {

Formula expand_counting(const Formula& f) {
  static thread_local uint64_t ctr = 0;
  switch (f.kind()) {
    case Formula::Kind::CountExists: {
      Formula body = expand_counting(f.kid());
      int n = f.count();
      std::vector<std::string> vars;
      for (int i = 0; i < n; ++i) vars.push_back("_c" + std::to_string(ctr++));
      std::vector<Formula> conj;
      FreshVars fresh("_cc");
      for (int i = 0; i < n; ++i) {
        std::map<std::string, Term> m{{f.name(), Term::var(vars[static_cast<size_t>(i)])}};
        conj.push_back(substitute_terms(body, m, fresh.fn()));
      }
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          conj.push_back(neq(Term::var(vars[static_cast<size_t>(i)]),
                             Term::var(vars[static_cast<size_t>(j)])));
      return exists_many(vars, land(std::move(conj)));
    }
    default: {
      if (f.kids().empty()) return f;
      std::vector<Formula> kids;
      for (auto& k : f.kids()) kids.push_back(expand_counting(k));
      Formula::Node n{f.kind()};
      n.name = f.name();
      n.so_arity = f.so_arity();
      n.count = f.count();
      n.args = f.args();
      n.kids = std::move(kids);
      return Formula::make(std::move(n));
    }
  }
}

namespace {

// Propositional grounding of a formula over a fixed universe size.
// Bound FO variables map to elements; constants and unbound variables get
// selector variables; SO quantifiers become free tables or expansions
// depending on polarity.
class Grounder {
public:
  Grounder(int size, const Config& cfg) : size_(size), cfg_(cfg) {
    true_lit_ = solver_.new_var();
    solver_.add_unit(true_lit_);
  }

  SatSolver& solver() { return solver_; }

  int ground_root(const Formula& f) {
    std::map<std::string, int> env;
    int lit = ground(f, true, env);
    solver_.add_unit(lit);
    return lit;
  }

  Model extract_model() {
    Model m;
    m.size = size_;
    for (auto& [key, var] : sel_vars_)
      if (solver_.value(var)) m.constants[key.first] = key.second;
    for (auto& [key, var] : atom_vars_)
      if (solver_.value(var)) m.relations[key.first].insert(key.second);
    // make sure every predicate seen appears, even with empty table
    for (auto& [key, _] : atom_vars_) m.relations.try_emplace(key.first);
    return m;
  }

private:
  using Env = std::map<std::string, int>;

  void bump(int64_t n) {
    budget_ += n;
    if (budget_ > cfg_.ground_atom_budget)
      throw budget_error("propositional grounding exceeds budget");
  }

  void clause(std::vector<int> c) {
    bump(1);
    solver_.add_clause(std::move(c));
  }

  int aux_and(const std::vector<int>& lits) {
    if (lits.empty()) return true_lit_;
    if (lits.size() == 1) return lits[0];
    int v = solver_.new_var();
    std::vector<int> big{v};
    for (int l : lits) {
      clause({-v, l});
      big.push_back(-l);
    }
    clause(std::move(big));
    return v;
  }

  int aux_or(const std::vector<int>& lits) {
    if (lits.empty()) return -true_lit_;
    if (lits.size() == 1) return lits[0];
    int v = solver_.new_var();
    std::vector<int> big{-v};
    for (int l : lits) {
      clause({v, -l});
      big.push_back(l);
    }
    clause(std::move(big));
    return v;
  }

  // selector variables with exactly-one constraint, created on first use
  int sel(const std::string& c, int elem) {
    auto key = std::make_pair(c, elem);
    auto it = sel_vars_.find(key);
    if (it != sel_vars_.end()) return it->second;
    if (!sel_done_.count(c)) {
      sel_done_.insert(c);
      std::vector<int> atleast;
      std::vector<int> vars;
      for (int e = 0; e < size_; ++e) {
        int v = solver_.new_var();
        sel_vars_[{c, e}] = v;
        vars.push_back(v);
        atleast.push_back(v);
      }
      clause(std::move(atleast));
      for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j) clause({-vars[i], -vars[j]});
    }
    return sel_vars_.at(key);
  }

  int atom_var(const std::string& pred, const std::vector<int>& tuple) {
    auto key = std::make_pair(pred, tuple);
    auto it = atom_vars_.find(key);
    if (it != atom_vars_.end()) return it->second;
    int v = solver_.new_var();
    atom_vars_[key] = v;
    return v;
  }

  struct GTerm { // ground term: element or symbolic constant
    bool is_elem;
    int elem;
    std::string sym;
  };

  GTerm gterm(const Term& t, const Env& env) {
    if (t.is_var()) {
      auto it = env.find(t.name);
      if (it != env.end()) return {true, it->second, {}};
      return {false, 0, t.name}; // free variable: implicit constant
    }
    return {false, 0, t.name};
  }

  // literal for pred(tuple) where some positions may be symbolic
  int atom_lit(const std::string& pred, const std::vector<GTerm>& ts) {
    // fast path: all elements
    bool pure = std::all_of(ts.begin(), ts.end(), [](const GTerm& t) { return t.is_elem; });
    // innermost SO table scope shadows global atoms
    const std::map<std::vector<int>, int>* table = nullptr;
    auto sit = so_tables_.find(pred);
    if (sit != so_tables_.end() && !sit->second.empty()) table = &sit->second.back();
    auto resolve = [&](const std::vector<int>& tuple) -> int {
      if (table) {
        auto it = table->find(tuple);
        if (it == table->end()) throw error("SO table missing tuple");
        return it->second;
      }
      return atom_var(pred, tuple);
    };
    if (pure) {
      std::vector<int> tuple;
      for (auto& t : ts) tuple.push_back(t.elem);
      return resolve(tuple);
    }
    // expand over valuations of the symbolic positions
    std::vector<size_t> sym_pos;
    for (size_t i = 0; i < ts.size(); ++i)
      if (!ts[i].is_elem) sym_pos.push_back(i);
    std::vector<int> choice(sym_pos.size(), 0);
    std::vector<int> disj;
    while (true) {
      std::vector<int> tuple;
      std::vector<int> guards;
      for (size_t i = 0, s = 0; i < ts.size(); ++i) {
        if (ts[i].is_elem) tuple.push_back(ts[i].elem);
        else {
          int e = choice[s];
          tuple.push_back(e);
          guards.push_back(sel(ts[i].sym, e));
          ++s;
        }
      }
      guards.push_back(resolve(tuple));
      disj.push_back(aux_and(guards));
      size_t i = 0;
      while (i < choice.size() && ++choice[i] == size_) choice[i++] = 0;
      if (i == choice.size()) break;
    }
    return aux_or(disj);
  }

  int eq_lit(const GTerm& a, const GTerm& b) {
    if (a.is_elem && b.is_elem) return a.elem == b.elem ? true_lit_ : -true_lit_;
    if (a.is_elem) return sel(b.sym, a.elem);
    if (b.is_elem) return sel(a.sym, b.elem);
    if (a.sym == b.sym) return true_lit_;
    std::vector<int> disj;
    for (int e = 0; e < size_; ++e) disj.push_back(aux_and({sel(a.sym, e), sel(b.sym, e)}));
    return aux_or(disj);
  }

  int64_t table_count(int arity) const {
    int64_t cells = 1;
    for (int i = 0; i < arity; ++i) {
      cells *= size_;
      if (cells > 62) return 63; // caller compares against budget
    }
    return cells;
  }

  int ground_so_free(const Formula& f, bool positive, Env& env) {
    // fresh free table
    std::map<std::vector<int>, int> table;
    for (auto& t : all_tuples(size_, f.so_arity())) table[t] = solver_.new_var();
    so_tables_[f.name()].push_back(std::move(table));
    int lit = ground(f.kid(), positive, env);
    so_tables_[f.name()].pop_back();
    return lit;
  }

  int ground_so_expand(const Formula& f, bool positive, Env& env) {
    int64_t cells = table_count(f.so_arity());
    if (cells > 62 || (1ll << cells) > cfg_.so_expand_budget)
      throw budget_error("SO quantifier expansion too large (arity " +
                         std::to_string(f.so_arity()) + ", size " + std::to_string(size_) + ")");
    auto tuples = all_tuples(size_, f.so_arity());
    int64_t total = 1ll << cells;
    std::vector<int> parts;
    for (int64_t mask = 0; mask < total; ++mask) {
      std::map<std::vector<int>, int> table;
      for (size_t i = 0; i < tuples.size(); ++i)
        table[tuples[i]] = (mask & (1ll << i)) ? true_lit_ : -true_lit_;
      so_tables_[f.name()].push_back(std::move(table));
      parts.push_back(ground(f.kid(), positive, env));
      so_tables_[f.name()].pop_back();
    }
    return f.is(Formula::Kind::SoExists) ? aux_or(parts) : aux_and(parts);
  }

  int ground(const Formula& f, bool positive, Env& env) {
    switch (f.kind()) {
      case Formula::Kind::True: return true_lit_;
      case Formula::Kind::False: return -true_lit_;
      case Formula::Kind::Atom: {
        std::vector<GTerm> ts;
        for (auto& t : f.args()) ts.push_back(gterm(t, env));
        return atom_lit(f.name(), ts);
      }
      case Formula::Kind::Eq:
        return eq_lit(gterm(f.args()[0], env), gterm(f.args()[1], env));
      case Formula::Kind::Not:
        return -ground(f.kid(), !positive, env);
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<int> parts;
        for (auto& k : f.kids()) parts.push_back(ground(k, positive, env));
        return f.is(Formula::Kind::And) ? aux_and(parts) : aux_or(parts);
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        std::vector<int> parts;
        auto saved = env.find(f.name()) != env.end() ? std::optional<int>(env[f.name()])
                                                     : std::nullopt;
        for (int e = 0; e < size_; ++e) {
          env[f.name()] = e;
          parts.push_back(ground(f.kid(), positive, env));
        }
        if (saved) env[f.name()] = *saved; else env.erase(f.name());
        return f.is(Formula::Kind::Forall) ? aux_and(parts) : aux_or(parts);
      }
      case Formula::Kind::CountExists: {
        // at least n elements satisfy the body: disjunction over n-subsets
        int n = f.count();
        if (n > size_) return -true_lit_;
        std::vector<int> body(static_cast<size_t>(size_));
        auto saved = env.find(f.name()) != env.end() ? std::optional<int>(env[f.name()])
                                                     : std::nullopt;
        for (int e = 0; e < size_; ++e) {
          env[f.name()] = e;
          body[static_cast<size_t>(e)] = ground(f.kid(), positive, env);
        }
        if (saved) env[f.name()] = *saved; else env.erase(f.name());
        // subsets of size n
        std::vector<int> subset;
        std::vector<int> disj;
        std::function<void(int, int)> rec = [&](int from, int left) {
          if (left == 0) {
            std::vector<int> lits;
            for (int i : subset) lits.push_back(body[static_cast<size_t>(i)]);
            disj.push_back(aux_and(lits));
            return;
          }
          for (int i = from; i + left <= size_; ++i) {
            subset.push_back(i);
            rec(i + 1, left - 1);
            subset.pop_back();
          }
        };
        rec(0, n);
        return aux_or(disj);
      }
      case Formula::Kind::SoExists:
        return positive ? ground_so_free(f, positive, env) : ground_so_expand(f, positive, env);
      case Formula::Kind::SoForall:
        return positive ? ground_so_expand(f, positive, env) : ground_so_free(f, positive, env);
    }
    throw error("unreachable kind in grounder");
  }

  int size_;
  Config cfg_;
  SatSolver solver_;
  int true_lit_;
  int64_t budget_ = 0;
  std::map<std::pair<std::string, int>, int> sel_vars_;
  std::set<std::string> sel_done_;
  std::map<std::pair<std::string, std::vector<int>>, int> atom_vars_;
  std::map<std::string, std::vector<std::map<std::vector<int>, int>>> so_tables_;
};

bool bsr_fragment_rec(const Formula& f, bool under_forall) {
  switch (f.kind()) {
    case Formula::Kind::SoForall:
    case Formula::Kind::SoExists:
      return false;
    case Formula::Kind::Exists:
      if (under_forall) return false;
      return bsr_fragment_rec(f.kid(), under_forall);
    case Formula::Kind::Forall:
      return bsr_fragment_rec(f.kid(), true);
    default:
      for (auto& k : f.kids())
        if (!bsr_fragment_rec(k, under_forall)) return false;
      return true;
  }
}

int count_exists_prefixable(const Formula& f) {
  int n = 0;
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    if (g.is(Formula::Kind::Exists)) ++n;
    for (auto& k : g.kids()) rec(k);
  };
  rec(f);
  return n;
}

} // namespace

bool in_bsr(const Formula& f) {
  Formula neg = to_nnf(expand_counting(lnot(f)));
  return !has_so_quant(neg) && bsr_fragment_rec(neg, false);
}

BoundedSatResult bounded_sat(const Formula& f, int max_size, const Config& cfg) {
  Formula g = expand_counting(f);
  for (int n = 1; n <= max_size; ++n) {
    Grounder gr(n, cfg);
    gr.ground_root(g);
    auto res = gr.solver().solve(cfg.sat_conflict_budget);
    if (!res) throw budget_error("SAT budget exceeded at universe size " + std::to_string(n));
    if (*res) return {true, gr.extract_model()};
  }
  return {false, std::nullopt};
}

BsrResult bsr_valid(const Formula& f, const Config& cfg) {
  Formula neg = to_nnf(expand_counting(lnot(f)));
  if (has_so_quant(neg)) throw fragment_error("bsr_valid: SO quantifier present");
  if (!bsr_fragment_rec(neg, false))
    throw fragment_error("bsr_valid: negation is not in the exists*forall* fragment");
  int n = static_cast<int>(constants_of(neg).size()) +
          static_cast<int>(free_vars(neg).size()) + count_exists_prefixable(neg);
  n = std::max(1, n);
  auto r = bounded_sat(neg, n, cfg);
  if (r.sat) return {false, r.model};
  return {true, std::nullopt};
}

bool valid_bounded(const Formula& f, int max_size, const Config& cfg) {
  return !bounded_sat(lnot(f), max_size, cfg).sat;
}

bool equivalent_bounded(const Formula& f1, const Formula& f2, int max_size, const Config& cfg) {
  Formula diff = lor2(land2(f1, lnot(f2)), land2(f2, lnot(f1)));
  return !bounded_sat(diff, max_size, cfg).sat;
}

ImplicationResult implies_checked(const Formula& lhs, const Formula& rhs, const Config& cfg) {
  Formula imp = implies(lhs, rhs);
  if (in_bsr(imp)) return {bsr_valid(imp, cfg).valid, true};
  return {valid_bounded(imp, cfg.bounded_universe, cfg), false};
}

ImplicationResult equivalent_checked(const Formula& lhs, const Formula& rhs, const Config& cfg) {
  if (equal(simplify(lhs), simplify(rhs))) return {true, true};
  auto a = implies_checked(lhs, rhs, cfg);
  if (!a.holds) return a;
  auto b = implies_checked(rhs, lhs, cfg);
  return {b.holds, a.exact && b.exact};
}

} // namespace fosg
