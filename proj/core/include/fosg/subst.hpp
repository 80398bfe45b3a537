#ifndef FOSG_SUBST_HPP
#define FOSG_SUBST_HPP

#include <map>
#include <string>
#include <vector>

#include "fosg/formula.hpp"
#include "fosg/signature.hpp"

namespace fosg {

// Predicate substitution: R -> (formal parameters, defining formula).
// The θ of transition edges; identity entries map R(y1..yr) to itself.
struct Substitution {
  struct Entry {
    std::vector<std::string> params;
    Formula body;
  };
  std::map<std::string, Entry> map;

  bool has(const std::string& pred) const { return map.count(pred) != 0; }
  const Entry& at(const std::string& pred) const { return map.at(pred); }
  void set(const std::string& pred, std::vector<std::string> params, Formula body) {
    map[pred] = Entry{std::move(params), std::move(body)};
  }

  static Substitution identity(const Signature& sig);
  static Entry identity_entry(const std::string& pred, int arity);
  bool is_identity_on(const std::string& pred) const;

  // Input predicates occurring in any body.
  std::set<std::string> input_preds_used(const Signature& sig) const;
};

// Replace every atom R(t̄) of a state predicate by θ(R) with formal parameters
// instantiated to t̄; capture-avoiding. Atoms of predicates without an entry
// raise semantic_error when they are state predicates of `sig`; input
// predicates and equality pass through untouched.
Formula apply_substitution(const Formula& f, const Substitution& theta, const Signature& sig);

// As above but every atom with an entry is rewritten, signature-free.
Formula apply_substitution_all(const Formula& f, const Substitution& theta);

} // namespace fosg

#endif
