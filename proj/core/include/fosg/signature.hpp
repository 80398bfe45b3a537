#ifndef FOSG_SIGNATURE_HPP
#define FOSG_SIGNATURE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fosg {

// Relational signature of a game: state predicates, the two input families,
// and the ordered list of global constants.
struct Signature {
  std::map<std::string, int> state_preds;
  std::map<std::string, int> input_preds_a;
  std::map<std::string, int> input_preds_b;
  std::vector<std::string> constants;

  bool is_state(const std::string& p) const { return state_preds.count(p) != 0; }
  bool is_input_a(const std::string& p) const { return input_preds_a.count(p) != 0; }
  bool is_input_b(const std::string& p) const { return input_preds_b.count(p) != 0; }
  bool is_input(const std::string& p) const { return is_input_a(p) || is_input_b(p); }
  bool is_pred(const std::string& p) const { return is_state(p) || is_input(p); }
  bool is_constant(const std::string& c) const;

  // Arity lookup across all three families; nullopt if undeclared.
  std::optional<int> arity(const std::string& p) const;

  // Throws semantic_error when the name sets overlap, an arity is negative,
  // or the constant list has duplicates.
  void validate() const;
};

} // namespace fosg

#endif
