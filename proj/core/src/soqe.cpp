#include "fosg/soqe.hpp"

#include <algorithm>

#include "fosg/decide.hpp"
#include "fosg/errors.hpp"
#include "fosg/normalize.hpp"
#include "fosg/pretty.hpp"

namespace fosg {

namespace {

std::vector<std::string> param_names(const std::string& hint, const std::string& tag, int arity) {
  std::vector<std::string> out;
  for (int i = 1; i <= arity; ++i)
    out.push_back("_" + (hint.empty() ? std::string("nf") : hint) + tag + std::to_string(i));
  return out;
}

Formula rename_vars(const Formula& f, const std::vector<std::string>& from,
                    const std::vector<std::string>& to) {
  std::map<std::string, Term> m;
  for (size_t i = 0; i < from.size(); ++i)
    if (from[i] != to[i]) m[from[i]] = Term::var(to[i]);
  FreshVars fresh("_r");
  return substitute_terms(f, m, fresh.fn());
}

// ⋁_j z_j ≠ y_j over two equal-length tuples
Formula tuple_neq(const Terms& z, const std::vector<std::string>& y) {
  std::vector<Formula> parts;
  for (size_t j = 0; j < y.size(); ++j) parts.push_back(neq(z[j], Term::var(y[j])));
  return lor(std::move(parts));
}

Formula tuple_eq(const Terms& a, const Terms& b) {
  std::vector<Formula> parts;
  for (size_t j = 0; j < a.size(); ++j) parts.push_back(eq(a[j], b[j]));
  return land(std::move(parts));
}

std::vector<std::string> prefix_vars_used(const std::vector<Quantifier>& prefix,
                                          const Formula& f) {
  auto fv = free_vars(f);
  std::vector<std::string> out;
  for (auto& q : prefix)
    if (fv.count(q.var)) out.push_back(q.var);
  return out;
}

} // namespace

Formula substitute_predicate(const Formula& f, const std::string& pred,
                             const std::vector<std::string>& params, const Formula& body) {
  Substitution theta;
  theta.set(pred, params, body);
  return apply_substitution_all(f, theta);
}

Formula recompose(const NormalForm& nf) {
  Terms y_args, yp_args;
  for (auto& v : nf.y_params) y_args.push_back(Term::var(v));
  for (auto& v : nf.yp_params) yp_args.push_back(Term::var(v));
  Formula pos = forall_many(nf.y_params, lor2(nf.f, atom(nf.pred, y_args)));
  Formula negc = forall_many(nf.yp_params, lor2(nf.g, lnot(atom(nf.pred, yp_args))));
  std::vector<std::string> both = nf.y_params;
  both.insert(both.end(), nf.yp_params.begin(), nf.yp_params.end());
  Formula mix = forall_many(
      both, lor({nf.h, atom(nf.pred, y_args), lnot(atom(nf.pred, yp_args))}));
  return land({nf.e, pos, negc, mix});
}

Formula eliminate_forall(const Formula& phi, const std::string& a_pred, const Config& cfg) {
  PrenexCnf cnf = to_prenex_cnf(phi, cfg);
  for (auto& q : cnf.prefix)
    if (!q.universal)
      throw fragment_error("eliminate_forall: input is not universal");
  std::vector<Formula> out;
  for (auto& c : cnf.clauses) {
    std::vector<Formula> rest;
    std::vector<Terms> pos, neg;
    for (auto& l : c) {
      if (!l.is_eq && l.pred == a_pred) {
        (l.neg ? neg : pos).push_back(l.args);
      } else {
        rest.push_back(lit_to_formula(l));
      }
    }
    // pairwise equality join; empty when a polarity is missing
    for (auto& z : pos)
      for (auto& zp : neg) rest.push_back(tuple_eq(z, zp));
    out.push_back(lor(std::move(rest)));
  }
  Formula matrix = land(std::move(out));
  std::vector<std::string> vars = prefix_vars_used(cnf.prefix, matrix);
  return simplify(forall_many(vars, matrix));
}

NormalForm normal_form(const Formula& phi, const std::string& b_pred, int arity,
                       const std::string& hint, const Config& cfg) {
  PrenexCnf cnf = to_prenex_cnf(phi, cfg);
  for (auto& q : cnf.prefix)
    if (!q.universal)
      throw fragment_error("normal_form: input is not universal");
  NormalForm nf;
  nf.pred = b_pred;
  nf.arity = arity;
  nf.y_params = param_names(hint, "y", arity);
  nf.yp_params = param_names(hint, "z", arity);

  std::vector<Formula> es, fs, gs, hs;
  for (auto& c : cnf.clauses) {
    std::vector<Formula> rest;
    std::vector<Terms> pos, neg;
    for (auto& l : c) {
      if (!l.is_eq && l.pred == b_pred) (l.neg ? neg : pos).push_back(l.args);
      else rest.push_back(lit_to_formula(l));
    }
    if (pos.size() > 1 || neg.size() > 1) nf.exact = false;
    Formula restf = lor(std::move(rest));
    std::vector<std::string> vars;
    auto close = [&](Formula body) {
      return forall_many(prefix_vars_used(cnf.prefix, body), std::move(body));
    };
    if (pos.empty() && neg.empty()) {
      es.push_back(close(restf));
      continue;
    }
    std::vector<Formula> posg, negg;
    for (auto& z : pos) posg.push_back(tuple_neq(z, nf.y_params));
    for (auto& z : neg) negg.push_back(tuple_neq(z, nf.yp_params));
    if (!pos.empty() && neg.empty()) {
      fs.push_back(close(lor2(restf, land(std::move(posg)))));
    } else if (pos.empty()) {
      gs.push_back(close(lor2(restf, land(std::move(negg)))));
    } else {
      hs.push_back(close(lor({restf, land(std::move(posg)), land(std::move(negg))})));
    }
  }
  nf.e = simplify(land(std::move(es)));
  nf.f = simplify(land(std::move(fs)));
  nf.g = simplify(land(std::move(gs)));
  nf.h = simplify(land(std::move(hs)));
  return nf;
}

namespace {

Formula g_at_y(const NormalForm& nf) { return rename_vars(nf.g, nf.yp_params, nf.y_params); }

} // namespace

ChoiceResult ackermann_eliminate(const NormalForm& nf) {
  if (!nf.h.is_true())
    throw fragment_error("ackermann_eliminate: normal form is not simple (H nontrivial)");
  ChoiceResult out;
  out.params = nf.y_params;
  Formula g_y = g_at_y(nf);
  out.eliminated = simplify(land2(nf.e, forall_many(nf.y_params, lor2(nf.f, g_y))));
  out.choice = simplify(lor2(lnot(nf.e), g_y));
  out.exact = true;
  out.k_used = 0;
  return out;
}

Formula h_power(const NormalForm& nf, int k) {
  if (k < 0) throw semantic_error("h_power: negative k");
  // H^0 = ȳ ≠ ȳ'
  std::vector<Formula> parts;
  for (size_t j = 0; j < nf.y_params.size(); ++j)
    parts.push_back(neq(Term::var(nf.y_params[j]), Term::var(nf.yp_params[j])));
  Formula cur = lor(std::move(parts));
  for (int level = 1; level <= k; ++level) {
    std::vector<std::string> mid;
    for (size_t j = 1; j <= nf.y_params.size(); ++j)
      mid.push_back("_hp" + std::to_string(level) + "_" + std::to_string(j));
    Formula left = rename_vars(cur, nf.yp_params, mid);        // H^{k-1}[ȳ1/ȳ']
    Formula right = rename_vars(nf.h, nf.y_params, mid);       // H[ȳ1/ȳ]
    cur = forall_many(mid, lor2(std::move(left), std::move(right)));
  }
  return cur;
}

namespace {

// (G∘H^i) with free ȳ': ∀z̄.G[z̄/ȳ'] ∨ H^i[z̄/ȳ]; for i=0 this collapses to G.
Formula g_comp_h(const NormalForm& nf, int i) {
  if (i == 0) return nf.g;
  std::vector<std::string> mid;
  for (size_t j = 1; j <= nf.y_params.size(); ++j)
    mid.push_back("_gc" + std::to_string(i) + "_" + std::to_string(j));
  Formula g_mid = rename_vars(nf.g, nf.yp_params, mid);
  Formula h_mid = rename_vars(h_power(nf, i), nf.y_params, mid);
  return forall_many(mid, lor2(std::move(g_mid), std::move(h_mid)));
}

// G∘H^i∘F, closed: ∀w̄.(G∘H^i)[w̄/ȳ'] ∨ F[w̄/ȳ]
Formula g_comp_h_comp_f(const NormalForm& nf, int i) {
  std::vector<std::string> w;
  for (size_t j = 1; j <= nf.y_params.size(); ++j)
    w.push_back("_gf" + std::to_string(i) + "_" + std::to_string(j));
  Formula gh = rename_vars(g_comp_h(nf, i), nf.yp_params, w);
  Formula fw = rename_vars(nf.f, nf.y_params, w);
  return forall_many(w, lor2(std::move(gh), std::move(fw)));
}

} // namespace

Formula gamma(const NormalForm& nf, int k) {
  if (k < 0) throw semantic_error("gamma: negative k");
  std::vector<Formula> conj;
  for (int i = 0; i <= k; ++i)
    conj.push_back(rename_vars(g_comp_h(nf, i), nf.yp_params, nf.y_params));
  return simplify(lor2(lnot(nf.e), land(std::move(conj))));
}

ChoiceResult gamma_iterate(const NormalForm& nf, int max_k, const Config& cfg) {
  if (max_k < 0) throw semantic_error("gamma_iterate: negative max_k");
  ChoiceResult out;
  out.params = nf.y_params;
  if (nf.h.is_true()) return ackermann_eliminate(nf); // γ stabilizes at k=0
  auto eliminated_upto = [&](int k) {
    std::vector<Formula> conj{nf.e};
    for (int i = 0; i <= k; ++i) conj.push_back(g_comp_h_comp_f(nf, i));
    return simplify(land(std::move(conj)));
  };
  for (int k = 0; k <= max_k; ++k) {
    Formula gk = gamma(nf, k);
    Formula gk1 = gamma(nf, k + 1);
    ImplicationResult stab = implies_checked(gk, gk1, cfg);
    if (stab.holds) {
      out.exact = true;
      out.bounded = !stab.exact;
      out.k_used = k;
      out.choice = gk;
      out.eliminated = eliminated_upto(k);
      return out;
    }
  }
  // sound under-approximation: φ[γ_maxK/B] implies ∃B.φ
  out.exact = false;
  out.k_used = max_k;
  out.choice = gamma(nf, max_k);
  out.eliminated =
      simplify(substitute_predicate(recompose(nf), nf.pred, nf.y_params, out.choice));
  return out;
}

ChoiceResult general_choice(const NormalForm& nf, int max_k, const Config& cfg) {
  // ℋ_Bφ(ȳ) = ∃B'. B'ȳ ∧ (∀ȳ'.G∨¬B'ȳ') ∧ (∀ȳ1ȳ'.H∨B'ȳ1∨¬B'ȳ')
  // Read as a normal form for B' with E'=⊤, F'(v̄) = (ȳ≠v̄), G'=G, H'=H.
  NormalForm inner;
  inner.pred = nf.pred + "_prime";
  inner.arity = nf.arity;
  inner.y_params = param_names("gch", "y", nf.arity);
  inner.yp_params = param_names("gch", "z", nf.arity);
  Terms outer_y;
  for (auto& v : nf.y_params) outer_y.push_back(Term::var(v));
  inner.e = f_true();
  inner.f = tuple_neq(outer_y, inner.y_params);
  inner.g = rename_vars(nf.g, nf.yp_params, inner.yp_params);
  {
    Formula h = rename_vars(nf.h, nf.y_params, inner.y_params);
    inner.h = rename_vars(h, nf.yp_params, inner.yp_params);
  }
  ChoiceResult ir = gamma_iterate(inner, max_k, cfg);
  ChoiceResult out;
  out.params = nf.y_params;
  out.choice = simplify(instantiate_guards(ir.eliminated));
  out.exact = ir.exact;
  out.bounded = ir.bounded;
  out.k_used = ir.k_used;
  out.eliminated =
      simplify(substitute_predicate(recompose(nf), nf.pred, nf.y_params, out.choice));
  return out;
}

bool is_ackermannian(const std::string& b_pred, const Substitution& theta, const Config& cfg) {
  for (auto& [r, entry] : theta.map) {
    if (!mentions_pred(entry.body, b_pred)) continue;
    if (has_so_quant(entry.body) || has_counting(entry.body)) return false;
    bool has_fo = false;
    std::function<void(const Formula&)> scan = [&](const Formula& f) {
      if (f.is_fo_quant()) has_fo = true;
      for (auto& k : f.kids()) scan(k);
    };
    scan(entry.body);
    if (has_fo) return false;
    PrenexCnf cnf = to_prenex_cnf(entry.body, cfg);
    for (auto& c : cnf.clauses) {
      bool pos = false, neg = false;
      for (auto& l : c)
        if (!l.is_eq && l.pred == b_pred) (l.neg ? neg : pos) = true;
      if (pos && neg) return false;
    }
  }
  return true;
}

Formula instantiate_guards(const Formula& f) {
  // collect a maximal ∀ prefix, then eliminate v≠t guards by instantiation
  if (f.is(Formula::Kind::Forall)) {
    std::vector<std::string> prefix;
    Formula cur = f;
    while (cur.is(Formula::Kind::Forall)) {
      prefix.push_back(cur.name());
      cur = cur.kid();
    }
    Formula body = instantiate_guards(cur);
    bool again = true;
    while (again) {
      again = false;
      if (!body.is(Formula::Kind::Or) && !(body.is(Formula::Kind::Not) && body.kid().is(Formula::Kind::Eq)))
        break;
      std::vector<Formula> disjuncts =
          body.is(Formula::Kind::Or) ? body.kids() : std::vector<Formula>{body};
      std::set<std::string> binder_set(prefix.begin(), prefix.end());
      for (size_t i = 0; i < disjuncts.size(); ++i) {
        const Formula& d = disjuncts[i];
        if (!d.is(Formula::Kind::Not) || !d.kid().is(Formula::Kind::Eq)) continue;
        const Term& a = d.kid().args()[0];
        const Term& b = d.kid().args()[1];
        for (int side = 0; side < 2; ++side) {
          const Term& v = side == 0 ? a : b;
          const Term& t = side == 0 ? b : a;
          if (!v.is_var() || !binder_set.count(v.name)) continue;
          if (t.is_var() && binder_set.count(t.name)) continue; // t must be outer
          // ∀v.(D ∨ v≠t) ≡ D[t/v]
          std::vector<Formula> rest;
          for (size_t j = 0; j < disjuncts.size(); ++j)
            if (j != i) rest.push_back(disjuncts[j]);
          FreshVars fresh("_ig");
          std::map<std::string, Term> m{{v.name, t}};
          body = substitute_terms(lor(std::move(rest)), m, fresh.fn());
          prefix.erase(std::find(prefix.begin(), prefix.end(), v.name));
          again = true;
          break;
        }
        if (again) break;
      }
    }
    return forall_many(prefix, body);
  }
  if (f.kids().empty()) return f;
  std::vector<Formula> kids;
  for (auto& k : f.kids()) kids.push_back(instantiate_guards(k));
  Formula::Node n{f.kind()};
  n.name = f.name();
  n.so_arity = f.so_arity();
  n.count = f.count();
  n.args = f.args();
  n.kids = std::move(kids);
  return Formula::make(std::move(n));
}

StrategyExtraction weakest_strategy_ackermannian(const Game& g, const AssertionMap& psi,
                                                 const Edge& e, const Config& cfg) {
  if (e.owner != Owner::B || !e.input_pred)
    throw semantic_error("weakest_strategy_ackermannian: not a B-edge with input");
  const std::string& b = *e.input_pred;
  if (!is_ackermannian(b, e.theta, cfg))
    throw semantic_error("predicate " + b + " is not ackermannian in the edge substitution");
  Formula post = psi.at(e.target);
  PrenexCnf cnf = to_prenex_cnf(post, cfg);
  for (auto& q : cnf.prefix)
    if (!q.universal)
      throw semantic_error("weakest_strategy_ackermannian: invariant not universal");

  auto b_params = formal_params(static_cast<int>(*g.sig.arity(b)));
  std::vector<Formula> e_parts, f_parts, g_parts;
  for (auto& c : cnf.clauses) {
    // at most one literal whose image mentions a B predicate
    int carriers = 0;
    for (auto& l : c) {
      if (l.is_eq) continue;
      auto it = e.theta.map.find(l.pred);
      if (it != e.theta.map.end()) {
        for (auto& p : preds_of(it->second.body))
          if (g.sig.is_input_b(p)) { ++carriers; break; }
      }
    }
    if (carriers > 1)
      throw semantic_error("clause '" + to_string(clause_to_formula(c)) +
                           "' carries more than one strategy-dependent literal");
    // apply θ literal-wise, separating the B image
    std::vector<Formula> others;
    Formula b_image;
    for (auto& l : c) {
      Formula img = apply_substitution(lit_to_formula(l), e.theta, g.sig);
      if (mentions_pred(img, b)) b_image = img;
      else others.push_back(std::move(img));
    }
    Formula d = lor(std::move(others));
    auto close = [&](Formula body) {
      return forall_many(prefix_vars_used(cnf.prefix, body), std::move(body));
    };
    if (!b_image.valid()) {
      e_parts.push_back(close(d));
      continue;
    }
    // B image is quantifier-free (ackermannian); CNF it and guard-rewrite
    PrenexCnf img_cnf = to_prenex_cnf(b_image, cfg);
    for (auto& gc : img_cnf.clauses) {
      std::vector<Formula> rest{d};
      std::vector<Terms> pos, neg;
      for (auto& l : gc) {
        if (!l.is_eq && l.pred == b) (l.neg ? neg : pos).push_back(l.args);
        else rest.push_back(lit_to_formula(l));
      }
      if (pos.empty() && neg.empty()) {
        e_parts.push_back(close(lor(std::move(rest))));
        continue;
      }
      if (!pos.empty() && !neg.empty())
        throw semantic_error("mixed-polarity strategy clause after substitution");
      std::vector<Formula> guards;
      for (auto& z : (pos.empty() ? neg : pos)) guards.push_back(tuple_neq(z, b_params));
      rest.push_back(land(std::move(guards)));
      (pos.empty() ? g_parts : f_parts).push_back(close(lor(std::move(rest))));
    }
  }
  Formula ef = simplify(land(std::move(e_parts)));
  Formula ff = simplify(instantiate_guards(land(std::move(f_parts))));
  Formula gf = simplify(instantiate_guards(land(std::move(g_parts))));
  StrategyExtraction out;
  out.psi_b = simplify(gf);
  out.residual = simplify(land2(ef, forall_many(b_params, lor2(ff, gf))));
  return out;
}

} // namespace fosg
