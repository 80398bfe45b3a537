#ifndef FOSG_TERM_HPP
#define FOSG_TERM_HPP

#include <compare>
#include <string>
#include <vector>

namespace fosg {

// A term is either a bound FO variable or a global constant.
struct Term {
  enum class Kind { Var, Const };
  Kind kind = Kind::Var;
  std::string name;

  static Term var(std::string n) { return Term{Kind::Var, std::move(n)}; }
  static Term cons(std::string n) { return Term{Kind::Const, std::move(n)}; }

  bool is_var() const { return kind == Kind::Var; }
  bool is_const() const { return kind == Kind::Const; }

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name;
  }
  // Fixed total order: constants before variables, then by name.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.kind != b.kind) return a.kind == Kind::Const ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.name <=> b.name;
  }
};

using Terms = std::vector<Term>;

} // namespace fosg

#endif
