#include "fosg/signature.hpp"

#include <algorithm>
#include <set>

#include "fosg/errors.hpp"

namespace fosg {

bool Signature::is_constant(const std::string& c) const {
  return std::find(constants.begin(), constants.end(), c) != constants.end();
}

std::optional<int> Signature::arity(const std::string& p) const {
  if (auto it = state_preds.find(p); it != state_preds.end()) return it->second;
  if (auto it = input_preds_a.find(p); it != input_preds_a.end()) return it->second;
  if (auto it = input_preds_b.find(p); it != input_preds_b.end()) return it->second;
  return std::nullopt;
}

void Signature::validate() const {
  std::set<std::string> seen;
  auto check = [&](const std::map<std::string, int>& m, const char* family) {
    for (auto& [name, ar] : m) {
      if (ar < 0) throw semantic_error("negative arity for predicate " + name);
      if (!seen.insert(name).second)
        throw semantic_error("predicate " + name + " declared in more than one family (" + family + ")");
    }
  };
  check(state_preds, "state");
  check(input_preds_a, "inputA");
  check(input_preds_b, "inputB");
  std::set<std::string> cs;
  for (auto& c : constants) {
    if (!cs.insert(c).second) throw semantic_error("duplicate constant " + c);
    if (seen.count(c)) throw semantic_error("name " + c + " used both as predicate and constant");
  }
}

} // namespace fosg
