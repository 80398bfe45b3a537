#include "fosg/normalize.hpp"

#include <algorithm>

#include "fosg/errors.hpp"

namespace fosg {

// --- NNF ---

namespace {

Formula nnf_rec(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Formula::Kind::True: return positive ? f_true() : f_false();
    case Formula::Kind::False: return positive ? f_false() : f_true();
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      return positive ? f : lnot(f);
    case Formula::Kind::CountExists:
      // kept opaque; negation stays on the counting node
      return positive ? f : lnot(f);
    case Formula::Kind::Not:
      return nnf_rec(f.kid(), !positive);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool conj = f.is(Formula::Kind::And) == positive;
      std::vector<Formula> kids;
      kids.reserve(f.kids().size());
      for (auto& k : f.kids()) kids.push_back(nnf_rec(k, positive));
      return conj ? land(std::move(kids)) : lor(std::move(kids));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool univ = f.is(Formula::Kind::Forall) == positive;
      Formula body = nnf_rec(f.kid(), positive);
      return univ ? forall(f.name(), std::move(body)) : exists(f.name(), std::move(body));
    }
    case Formula::Kind::SoForall:
    case Formula::Kind::SoExists:
      throw fragment_error("to_nnf: SO quantifier not allowed");
  }
  throw error("unreachable");
}

} // namespace

Formula to_nnf(const Formula& f) { return nnf_rec(f, true); }

// --- literals and clauses ---

int compare(const Lit& a, const Lit& b) {
  if (a.is_eq != b.is_eq) return a.is_eq ? 1 : -1; // predicate literals first
  if (int c = a.pred.compare(b.pred); c != 0) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); ++i) {
    auto c = a.args[i] <=> b.args[i];
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.neg != b.neg) return a.neg ? 1 : -1;
  return 0;
}

Formula lit_to_formula(const Lit& l) {
  Formula f = l.is_eq ? eq(l.args[0], l.args[1]) : atom(l.pred, l.args);
  return l.neg ? lnot(f) : f;
}

Formula clause_to_formula(const Clause& c) {
  std::vector<Formula> fs;
  fs.reserve(c.size());
  for (auto& l : c) fs.push_back(lit_to_formula(l));
  return lor(std::move(fs));
}

Formula cnf_to_formula(const PrenexCnf& cnf) {
  std::vector<Formula> cs;
  cs.reserve(cnf.clauses.size());
  for (auto& c : cnf.clauses) cs.push_back(clause_to_formula(c));
  Formula body = land(std::move(cs));
  for (auto it = cnf.prefix.rbegin(); it != cnf.prefix.rend(); ++it)
    body = it->universal ? forall(it->var, std::move(body)) : exists(it->var, std::move(body));
  return body;
}

std::optional<Lit> formula_to_lit(const Formula& f) {
  bool neg = false;
  const Formula* g = &f;
  if (g->is(Formula::Kind::Not)) {
    neg = true;
    g = &g->kid();
  }
  if (g->is(Formula::Kind::Atom)) return Lit{neg, false, g->name(), g->args()};
  if (g->is(Formula::Kind::Eq)) return Lit{neg, true, "", g->args()};
  return std::nullopt;
}

std::optional<Clause> normalize_clause(Clause c) {
  std::sort(c.begin(), c.end(), LitLess{});
  c.erase(std::unique(c.begin(), c.end()), c.end());
  Clause out;
  for (size_t i = 0; i < c.size(); ++i) {
    const Lit& l = c[i];
    if (l.is_eq && l.args[0] == l.args[1]) {
      if (!l.neg) return std::nullopt; // t = t: tautology
      continue;                        // t != t: drop literal
    }
    // complementary pair: sorted order puts them adjacent
    if (i + 1 < c.size()) {
      const Lit& m = c[i + 1];
      if (!l.neg && m.neg && l.is_eq == m.is_eq && l.pred == m.pred && l.args == m.args)
        return std::nullopt;
    }
    out.push_back(l);
  }
  return out;
}

namespace {

// true when a subsumes b (a's literals all occur in b); both sorted
bool subsumes(const Clause& a, const Clause& b) {
  if (a.size() > b.size()) return false;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i], b[j]);
    if (c == 0) { ++i; ++j; }
    else if (c > 0) ++j;
    else return false;
  }
  return i == a.size();
}

bool clause_less(const Clause& a, const Clause& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

} // namespace

std::vector<Clause> normalize_clause_set(std::vector<Clause> cs) {
  std::sort(cs.begin(), cs.end(), clause_less);
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  // shorter clauses first, so one forward pass removes subsumed ones
  std::vector<Clause> out;
  for (auto& c : cs) {
    bool sub = false;
    for (auto& kept : out) {
      if (subsumes(kept, c)) { sub = true; break; }
    }
    if (!sub) out.push_back(std::move(c));
  }
  return out;
}

// --- prenex CNF ---

namespace {

struct PrenexState {
  std::vector<Quantifier> prefix;
  FreshVars fresh{"_q"};
};

// Pull quantifiers of an NNF formula into the prefix, renaming binders apart.
Formula pull_quants(const Formula& f, PrenexState& st, std::map<std::string, Term>& ren) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      return substitute_terms(f, ren, st.fresh.fn());
    case Formula::Kind::Not:
      return lnot(pull_quants(f.kid(), st, ren));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      for (auto& k : f.kids()) kids.push_back(pull_quants(k, st, ren));
      return f.is(Formula::Kind::And) ? land(std::move(kids)) : lor(std::move(kids));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::string nv = st.fresh.next();
      st.prefix.push_back({f.is(Formula::Kind::Forall), nv});
      bool had = ren.count(f.name()) != 0;
      Term old;
      if (had) old = ren[f.name()];
      ren[f.name()] = Term::var(nv);
      Formula body = pull_quants(f.kid(), st, ren);
      if (had) ren[f.name()] = old; else ren.erase(f.name());
      return body;
    }
    default:
      throw fragment_error("to_prenex_cnf: SO or counting quantifier not allowed");
  }
}

// Distribute OR over AND, clause-budgeted.
std::vector<Clause> cnf_of(const Formula& f, const Config& cfg);

std::vector<Clause> cnf_or(const std::vector<Formula>& kids, const Config& cfg) {
  std::vector<Clause> acc = {{}}; // one empty clause
  for (auto& k : kids) {
    std::vector<Clause> kc = cnf_of(k, cfg);
    std::vector<Clause> next;
    if (acc.size() * kc.size() > static_cast<size_t>(cfg.cnf_clause_budget))
      throw budget_error("CNF clause budget exceeded (" +
                         std::to_string(acc.size() * kc.size()) + " > " +
                         std::to_string(cfg.cnf_clause_budget) + ")");
    for (auto& a : acc) {
      for (auto& c : kc) {
        Clause merged = a;
        merged.insert(merged.end(), c.begin(), c.end());
        if (auto n = normalize_clause(std::move(merged))) next.push_back(std::move(*n));
      }
    }
    acc = normalize_clause_set(std::move(next));
    if (acc.empty()) return acc; // TRUE absorbs the rest of the disjunction
  }
  return acc;
}

std::vector<Clause> cnf_of(const Formula& f, const Config& cfg) {
  switch (f.kind()) {
    case Formula::Kind::True: return {};
    case Formula::Kind::False: return {{}};
    case Formula::Kind::And: {
      std::vector<Clause> out;
      for (auto& k : f.kids()) {
        auto kc = cnf_of(k, cfg);
        out.insert(out.end(), kc.begin(), kc.end());
        if (out.size() > static_cast<size_t>(cfg.cnf_clause_budget))
          throw budget_error("CNF clause budget exceeded");
      }
      return normalize_clause_set(std::move(out));
    }
    case Formula::Kind::Or:
      return cnf_or(f.kids(), cfg);
    default: {
      auto l = formula_to_lit(f);
      if (!l) throw error("matrix not quantifier-free in CNF conversion");
      if (auto n = normalize_clause({*l})) return {std::move(*n)};
      return {};
    }
  }
}

} // namespace

PrenexCnf to_prenex_cnf(const Formula& f, const Config& cfg) {
  Formula nnf = to_nnf(f);
  PrenexState st;
  std::map<std::string, Term> ren;
  Formula matrix = pull_quants(nnf, st, ren);
  PrenexCnf out;
  out.clauses = cnf_of(matrix, cfg);
  if (out.is_true() || out.is_false()) return out; // prefix irrelevant
  // Drop prefix entries whose variable no longer occurs.
  std::set<std::string> used;
  for (auto& c : out.clauses)
    for (auto& l : c)
      for (auto& t : l.args)
        if (t.is_var()) used.insert(t.name);
  for (auto& q : st.prefix)
    if (used.count(q.var)) out.prefix.push_back(q);
  return out;
}

// --- simplify ---

namespace {

Formula simplify_rec(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Eq:
      return eq(f.args()[0], f.args()[1]); // factory handles t = t
    case Formula::Kind::Not:
      return lnot(simplify_rec(f.kid()));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      for (auto& k : f.kids()) kids.push_back(simplify_rec(k));
      Formula g = f.is(Formula::Kind::And) ? land(std::move(kids)) : lor(std::move(kids));
      if (!g.is(Formula::Kind::And) && !g.is(Formula::Kind::Or)) return g;
      // canonical child order + dedup
      std::vector<Formula> sorted = g.kids();
      std::sort(sorted.begin(), sorted.end(), FormulaLess{});
      sorted.erase(std::unique(sorted.begin(), sorted.end(),
                               [](const Formula& a, const Formula& b) { return equal(a, b); }),
                   sorted.end());
      // complementary children: A & !A -> false, A | !A -> true
      for (auto& k : sorted) {
        Formula nk = lnot(k);
        if (std::binary_search(sorted.begin(), sorted.end(), nk, FormulaLess{}))
          return g.is(Formula::Kind::And) ? f_false() : f_true();
      }
      // clause-level subsumption inside conjunctions of disjunction-shaped kids
      if (g.is(Formula::Kind::And)) {
        bool clausal = true;
        std::vector<Clause> cls;
        for (auto& k : sorted) {
          Clause c;
          bool ok = true;
          if (auto l = formula_to_lit(k)) {
            c.push_back(*l);
          } else if (k.is(Formula::Kind::Or)) {
            for (auto& d : k.kids()) {
              auto l = formula_to_lit(d);
              if (!l) { ok = false; break; }
              c.push_back(*l);
            }
          } else {
            ok = false;
          }
          if (!ok) { clausal = false; break; }
          if (auto n = normalize_clause(std::move(c))) cls.push_back(std::move(*n));
        }
        if (clausal) {
          cls = normalize_clause_set(std::move(cls));
          std::vector<Formula> out;
          for (auto& c : cls) {
            // re-sort by formula order so the result is a simplify fixpoint
            std::vector<Formula> lits;
            for (auto& l : c) lits.push_back(lit_to_formula(l));
            std::sort(lits.begin(), lits.end(), FormulaLess{});
            out.push_back(lor(std::move(lits)));
          }
          return land(std::move(out));
        }
      }
      if (sorted.size() == 1) return sorted[0];
      Formula::Node n{g.kind()};
      n.kids = std::move(sorted);
      return Formula::make(std::move(n));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Formula body = simplify_rec(f.kid());
      if (!free_vars(body).count(f.name()))
        return body; // unused binder
      return f.is(Formula::Kind::Forall) ? forall(f.name(), std::move(body))
                                         : exists(f.name(), std::move(body));
    }
    case Formula::Kind::CountExists: {
      Formula body = simplify_rec(f.kid());
      return count_exists(f.count(), f.name(), std::move(body));
    }
    case Formula::Kind::SoForall:
    case Formula::Kind::SoExists: {
      Formula body = simplify_rec(f.kid());
      if (!mentions_pred(body, f.name()))
        return body; // unused SO binder
      return f.is(Formula::Kind::SoForall) ? so_forall(f.name(), f.so_arity(), std::move(body))
                                           : so_exists(f.name(), f.so_arity(), std::move(body));
    }
  }
  throw error("unreachable");
}

} // namespace

Formula simplify(const Formula& f) { return simplify_rec(f); }

} // namespace fosg
