#include "fosg/formula.hpp"

#include <algorithm>

#include "fosg/errors.hpp"

namespace fosg {

Formula Formula::make(Node n) {
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula f_true() {
  static Formula t = Formula::make({Formula::Kind::True});
  return t;
}

Formula f_false() {
  static Formula f = Formula::make({Formula::Kind::False});
  return f;
}

Formula atom(std::string pred, Terms args) {
  Formula::Node n{Formula::Kind::Atom};
  n.name = std::move(pred);
  n.args = std::move(args);
  return Formula::make(std::move(n));
}

Formula eq(Term a, Term b) {
  if (a == b) return f_true();
  if (b < a) std::swap(a, b);
  Formula::Node n{Formula::Kind::Eq};
  n.args = {std::move(a), std::move(b)};
  return Formula::make(std::move(n));
}

Formula neq(Term a, Term b) { return lnot(eq(std::move(a), std::move(b))); }

Formula lnot(Formula f) {
  switch (f.kind()) {
    case Formula::Kind::True: return f_false();
    case Formula::Kind::False: return f_true();
    case Formula::Kind::Not: return f.kid();
    default: break;
  }
  Formula::Node n{Formula::Kind::Not};
  n.kids = {std::move(f)};
  return Formula::make(std::move(n));
}

static Formula nary(Formula::Kind k, std::vector<Formula> fs) {
  const bool conj = k == Formula::Kind::And;
  std::vector<Formula> flat;
  for (auto& f : fs) {
    if (!f.valid()) throw error("invalid formula handle");
    if (conj ? f.is_true() : f.is_false()) continue;
    if (conj ? f.is_false() : f.is_true()) return conj ? f_false() : f_true();
    if (f.is(k)) {
      for (auto& g : f.kids()) flat.push_back(g);
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (flat.empty()) return conj ? f_true() : f_false();
  if (flat.size() == 1) return flat[0];
  Formula::Node n{k};
  n.kids = std::move(flat);
  return Formula::make(std::move(n));
}

Formula land(std::vector<Formula> fs) { return nary(Formula::Kind::And, std::move(fs)); }
Formula lor(std::vector<Formula> fs) { return nary(Formula::Kind::Or, std::move(fs)); }
Formula land2(Formula a, Formula b) { return land({std::move(a), std::move(b)}); }
Formula lor2(Formula a, Formula b) { return lor({std::move(a), std::move(b)}); }
Formula implies(Formula a, Formula b) { return lor2(lnot(std::move(a)), std::move(b)); }

Formula iff(Formula a, Formula b) {
  return land2(implies(a, b), implies(std::move(b), std::move(a)));
}

static Formula quant(Formula::Kind k, std::string var, Formula body) {
  Formula::Node n{k};
  n.name = std::move(var);
  n.kids = {std::move(body)};
  return Formula::make(std::move(n));
}

Formula forall(std::string var, Formula body) {
  if (body.is_true() || body.is_false()) return body;
  return quant(Formula::Kind::Forall, std::move(var), std::move(body));
}

Formula exists(std::string var, Formula body) {
  if (body.is_true() || body.is_false()) return body;
  return quant(Formula::Kind::Exists, std::move(var), std::move(body));
}

Formula forall_many(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}

Formula exists_many(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}

static Formula so_quant(Formula::Kind k, std::string pred, int arity, Formula body) {
  if (body.is_true() || body.is_false()) return body;
  Formula::Node n{k};
  n.name = std::move(pred);
  n.so_arity = arity;
  n.kids = {std::move(body)};
  return Formula::make(std::move(n));
}

Formula so_forall(std::string pred, int arity, Formula body) {
  return so_quant(Formula::Kind::SoForall, std::move(pred), arity, std::move(body));
}

Formula so_exists(std::string pred, int arity, Formula body) {
  return so_quant(Formula::Kind::SoExists, std::move(pred), arity, std::move(body));
}

Formula count_exists(int n, std::string var, Formula body) {
  if (n <= 0) return f_true();
  if (body.is_false()) return f_false();
  Formula::Node node{Formula::Kind::CountExists};
  node.name = std::move(var);
  node.count = n;
  node.kids = {std::move(body)};
  return Formula::make(std::move(node));
}

// --- comparison ---

static int cmp_terms(const Terms& a, const Terms& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    auto c = a[i] <=> b[i];
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

int compare(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.so_arity() != b.so_arity()) return a.so_arity() < b.so_arity() ? -1 : 1;
  if (a.count() != b.count()) return a.count() < b.count() ? -1 : 1;
  if (int c = cmp_terms(a.args(), b.args()); c != 0) return c;
  if (a.kids().size() != b.kids().size()) return a.kids().size() < b.kids().size() ? -1 : 1;
  for (size_t i = 0; i < a.kids().size(); ++i) {
    if (int c = compare(a.kids()[i], b.kids()[i]); c != 0) return c;
  }
  return 0;
}

bool equal(const Formula& a, const Formula& b) { return compare(a, b) == 0; }

static void hash_mix(size_t& h, size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

size_t hash_value(const Formula& f) {
  size_t h = static_cast<size_t>(f.kind());
  hash_mix(h, std::hash<std::string>{}(f.name()));
  hash_mix(h, static_cast<size_t>(f.so_arity() + 1));
  hash_mix(h, static_cast<size_t>(f.count()));
  for (auto& t : f.args()) {
    hash_mix(h, static_cast<size_t>(t.kind));
    hash_mix(h, std::hash<std::string>{}(t.name));
  }
  for (auto& k : f.kids()) hash_mix(h, hash_value(k));
  return h;
}

// --- queries ---

namespace {

void free_vars_rec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      for (auto& t : f.args())
        if (t.is_var() && !bound.count(t.name)) out.insert(t.name);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::CountExists: {
      bool inserted = bound.insert(f.name()).second;
      free_vars_rec(f.kid(), bound, out);
      if (inserted) bound.erase(f.name());
      return;
    }
    default:
      for (auto& k : f.kids()) free_vars_rec(k, bound, out);
      return;
  }
}

} // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::set<std::string> bound_vars(const Formula& f) {
  std::set<std::string> out;
  if (f.is_fo_quant() || f.is(Formula::Kind::CountExists)) out.insert(f.name());
  for (auto& k : f.kids()) {
    auto sub = bound_vars(k);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  if (f.is(Formula::Kind::Atom) || f.is(Formula::Kind::Eq)) {
    for (auto& t : f.args())
      if (t.is_const()) out.insert(t.name);
  }
  for (auto& k : f.kids()) {
    auto sub = constants_of(k);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

namespace {

void preds_rec(const Formula& f, std::set<std::string>& so_bound, std::map<std::string, int>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (!so_bound.count(f.name())) out.emplace(f.name(), static_cast<int>(f.args().size()));
      return;
    case Formula::Kind::SoForall:
    case Formula::Kind::SoExists: {
      bool inserted = so_bound.insert(f.name()).second;
      preds_rec(f.kid(), so_bound, out);
      if (inserted) so_bound.erase(f.name());
      return;
    }
    default:
      for (auto& k : f.kids()) preds_rec(k, so_bound, out);
      return;
  }
}

} // namespace

std::map<std::string, int> pred_arities(const Formula& f) {
  std::set<std::string> so_bound;
  std::map<std::string, int> out;
  preds_rec(f, so_bound, out);
  return out;
}

std::set<std::string> preds_of(const Formula& f) {
  std::set<std::string> out;
  for (auto& [p, _] : pred_arities(f)) out.insert(p);
  return out;
}

bool mentions_pred(const Formula& f, const std::string& pred) {
  return preds_of(f).count(pred) != 0;
}

size_t node_count(const Formula& f) {
  size_t n = 1;
  for (auto& k : f.kids()) n += node_count(k);
  return n;
}

namespace {

bool universal_rec(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Formula::Kind::Forall:
      return positive && universal_rec(f.kid(), positive);
    case Formula::Kind::Exists:
      return !positive && universal_rec(f.kid(), positive);
    case Formula::Kind::Not:
      return universal_rec(f.kid(), !positive);
    case Formula::Kind::SoForall:
    case Formula::Kind::SoExists:
    case Formula::Kind::CountExists:
      return false;
    default:
      for (auto& k : f.kids())
        if (!universal_rec(k, positive)) return false;
      return true;
  }
}

} // namespace

bool is_universal_fo(const Formula& f) { return universal_rec(f, true); }

bool has_so_quant(const Formula& f) {
  if (f.is_so_quant()) return true;
  for (auto& k : f.kids())
    if (has_so_quant(k)) return true;
  return false;
}

bool has_counting(const Formula& f) {
  if (f.is(Formula::Kind::CountExists)) return true;
  for (auto& k : f.kids())
    if (has_counting(k)) return true;
  return false;
}

// --- substitution of terms for variables ---

namespace {

Term subst_term(const Term& t, const std::map<std::string, Term>& map) {
  if (t.is_var()) {
    auto it = map.find(t.name);
    if (it != map.end()) return it->second;
  }
  return t;
}

Formula subst_rec(const Formula& f, std::map<std::string, Term> map,
                  const std::function<std::string()>& fresh) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Atom: {
      Terms args;
      args.reserve(f.args().size());
      for (auto& t : f.args()) args.push_back(subst_term(t, map));
      return atom(f.name(), std::move(args));
    }
    case Formula::Kind::Eq:
      return eq(subst_term(f.args()[0], map), subst_term(f.args()[1], map));
    case Formula::Kind::Not:
      return lnot(subst_rec(f.kid(), map, fresh));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.kids().size());
      for (auto& k : f.kids()) kids.push_back(subst_rec(k, map, fresh));
      return f.is(Formula::Kind::And) ? land(std::move(kids)) : lor(std::move(kids));
    }
    case Formula::Kind::SoForall:
    case Formula::Kind::SoExists: {
      Formula body = subst_rec(f.kid(), map, fresh);
      return f.is(Formula::Kind::SoForall) ? so_forall(f.name(), f.so_arity(), std::move(body))
                                           : so_exists(f.name(), f.so_arity(), std::move(body));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::CountExists: {
      std::string var = f.name();
      map.erase(var); // binder shadows
      // Rename the binder if any substituted term mentions it.
      bool capture = false;
      auto fv = free_vars(f.kid());
      for (auto& [v, t] : map) {
        if (fv.count(v) && t.is_var() && t.name == var) { capture = true; break; }
      }
      Formula body = f.kid();
      if (capture) {
        std::string nv = fresh();
        std::map<std::string, Term> ren{{var, Term::var(nv)}};
        body = subst_rec(body, ren, fresh);
        var = nv;
      }
      body = subst_rec(body, map, fresh);
      if (f.is(Formula::Kind::Forall)) return forall(var, std::move(body));
      if (f.is(Formula::Kind::Exists)) return exists(var, std::move(body));
      return count_exists(f.count(), var, std::move(body));
    }
  }
  throw error("unreachable formula kind");
}

} // namespace

Formula substitute_terms(const Formula& f, const std::map<std::string, Term>& map,
                         const std::function<std::string()>& fresh) {
  if (map.empty()) return f;
  return subst_rec(f, map, fresh);
}

namespace {

Formula rename_rec(const Formula& f, std::map<std::string, Term>& ren,
                   const std::function<std::string()>& fresh) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Atom: {
      Terms args;
      for (auto& t : f.args()) args.push_back(subst_term(t, ren));
      return atom(f.name(), std::move(args));
    }
    case Formula::Kind::Eq:
      return eq(subst_term(f.args()[0], ren), subst_term(f.args()[1], ren));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::CountExists: {
      std::string nv = fresh();
      bool had = ren.count(f.name()) != 0;
      Term old;
      if (had) old = ren[f.name()];
      ren[f.name()] = Term::var(nv);
      Formula body = rename_rec(f.kid(), ren, fresh);
      if (had) ren[f.name()] = old; else ren.erase(f.name());
      if (f.is(Formula::Kind::Forall)) return forall(nv, std::move(body));
      if (f.is(Formula::Kind::Exists)) return exists(nv, std::move(body));
      return count_exists(f.count(), nv, std::move(body));
    }
    default: {
      std::vector<Formula> kids;
      for (auto& k : f.kids()) kids.push_back(rename_rec(k, ren, fresh));
      Formula::Node n{f.kind()};
      n.name = f.name();
      n.so_arity = f.so_arity();
      n.count = f.count();
      n.kids = std::move(kids);
      return Formula::make(std::move(n));
    }
  }
}

} // namespace

Formula rename_bound_apart(const Formula& f, const std::function<std::string()>& fresh) {
  std::map<std::string, Term> ren;
  return rename_rec(f, ren, fresh);
}

std::vector<std::string> formal_params(int arity, const std::string& prefix) {
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(arity));
  for (int i = 1; i <= arity; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

} // namespace fosg
