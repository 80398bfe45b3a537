#include "fosg/subst.hpp"

#include "fosg/errors.hpp"

namespace fosg {

Substitution::Entry Substitution::identity_entry(const std::string& pred, int arity) {
  auto params = formal_params(arity);
  Terms args;
  for (auto& p : params) args.push_back(Term::var(p));
  return Entry{params, atom(pred, std::move(args))};
}

Substitution Substitution::identity(const Signature& sig) {
  Substitution s;
  for (auto& [p, ar] : sig.state_preds) s.map[p] = identity_entry(p, ar);
  return s;
}

bool Substitution::is_identity_on(const std::string& pred) const {
  auto it = map.find(pred);
  if (it == map.end()) return true;
  const Entry& e = it->second;
  if (!e.body.is(Formula::Kind::Atom) || e.body.name() != pred) return false;
  if (e.body.args().size() != e.params.size()) return false;
  for (size_t i = 0; i < e.params.size(); ++i) {
    const Term& t = e.body.args()[i];
    if (!t.is_var() || t.name != e.params[i]) return false;
  }
  return true;
}

std::set<std::string> Substitution::input_preds_used(const Signature& sig) const {
  std::set<std::string> out;
  for (auto& [_, e] : map)
    for (auto& p : preds_of(e.body))
      if (sig.is_input(p)) out.insert(p);
  return out;
}

namespace {

Formula apply_rec(const Formula& f, const Substitution& theta, const Signature* sig,
                  FreshVars& fresh) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Eq:
      return f;
    case Formula::Kind::Atom: {
      auto it = theta.map.find(f.name());
      if (it == theta.map.end()) {
        if (sig && sig->is_state(f.name()))
          throw semantic_error("substitution has no entry for state predicate " + f.name());
        return f;
      }
      const auto& e = it->second;
      if (e.params.size() != f.args().size())
        throw semantic_error("arity mismatch applying substitution for " + f.name());
      // Rename the body's binders apart, then plug in the actual arguments.
      Formula body = rename_bound_apart(e.body, fresh.fn());
      std::map<std::string, Term> m;
      for (size_t i = 0; i < e.params.size(); ++i) m[e.params[i]] = f.args()[i];
      return substitute_terms(body, m, fresh.fn());
    }
    default: {
      std::vector<Formula> kids;
      kids.reserve(f.kids().size());
      for (auto& k : f.kids()) kids.push_back(apply_rec(k, theta, sig, fresh));
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

Formula apply_substitution(const Formula& f, const Substitution& theta, const Signature& sig) {
  FreshVars fresh("_s");
  return apply_rec(f, theta, &sig, fresh);
}

Formula apply_substitution_all(const Formula& f, const Substitution& theta) {
  FreshVars fresh("_s");
  return apply_rec(f, theta, nullptr, fresh);
}

} // namespace fosg
