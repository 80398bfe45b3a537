#include "fosg/pretty.hpp"

#include <sstream>

#include "fosg/errors.hpp"

namespace fosg {

namespace {

// Precedence levels: or=1, and=2, not/quant/atom=3. Quantifier scope extends
// maximally right, so a quantifier printed inside a binary context needs parens.

void print_rec(std::ostream& os, const Formula& f, int parent_prec,
               std::map<std::string, std::string>& ren, int& counter,
               const std::set<std::string>& taken);

std::string display_var(const std::string& v, std::map<std::string, std::string>& ren,
                        int& counter, const std::set<std::string>& taken) {
  if (v.empty() || v[0] != '_') return v;
  auto it = ren.find(v);
  if (it != ren.end()) return it->second;
  std::string cand;
  do {
    cand = "v" + std::to_string(++counter);
  } while (taken.count(cand));
  ren[v] = cand;
  return cand;
}

void print_term(std::ostream& os, const Term& t, std::map<std::string, std::string>& ren,
                int& counter, const std::set<std::string>& taken) {
  if (t.is_var()) os << display_var(t.name, ren, counter, taken);
  else os << t.name;
}

void print_quant_block(std::ostream& os, const Formula& f, std::map<std::string, std::string>& ren,
                       int& counter, const std::set<std::string>& taken) {
  const char* kw = f.is(Formula::Kind::Forall) ? "forall" : "exists";
  os << kw << " ";
  Formula cur = f;
  bool first = true;
  while (cur.kind() == f.kind()) {
    if (!first) os << ", ";
    os << display_var(cur.name(), ren, counter, taken);
    first = false;
    cur = cur.kid();
  }
  os << ". ";
  print_rec(os, cur, 0, ren, counter, taken);
}

void print_rec(std::ostream& os, const Formula& f, int parent_prec,
               std::map<std::string, std::string>& ren, int& counter,
               const std::set<std::string>& taken) {
  switch (f.kind()) {
    case Formula::Kind::True: os << "true"; return;
    case Formula::Kind::False: os << "false"; return;
    case Formula::Kind::Atom: {
      os << f.name();
      if (!f.args().empty()) {
        os << "(";
        for (size_t i = 0; i < f.args().size(); ++i) {
          if (i) os << ", ";
          print_term(os, f.args()[i], ren, counter, taken);
        }
        os << ")";
      }
      return;
    }
    case Formula::Kind::Eq:
      print_term(os, f.args()[0], ren, counter, taken);
      os << " = ";
      print_term(os, f.args()[1], ren, counter, taken);
      return;
    case Formula::Kind::Not:
      if (f.kid().is(Formula::Kind::Eq)) { // print as disequality
        print_term(os, f.kid().args()[0], ren, counter, taken);
        os << " != ";
        print_term(os, f.kid().args()[1], ren, counter, taken);
        return;
      }
      os << "!";
      if (f.kid().is(Formula::Kind::And) || f.kid().is(Formula::Kind::Or) ||
          f.kid().is(Formula::Kind::Eq) || f.kid().is_quant()) {
        os << "(";
        print_rec(os, f.kid(), 0, ren, counter, taken);
        os << ")";
      } else {
        print_rec(os, f.kid(), 3, ren, counter, taken);
      }
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      int prec = f.is(Formula::Kind::And) ? 2 : 1;
      const char* op = f.is(Formula::Kind::And) ? " & " : " | ";
      bool paren = parent_prec > prec;
      if (paren) os << "(";
      for (size_t i = 0; i < f.kids().size(); ++i) {
        if (i) os << op;
        const Formula& k = f.kids()[i];
        if (k.is_quant()) { // scope would swallow the rest
          os << "(";
          print_rec(os, k, 0, ren, counter, taken);
          os << ")";
        } else {
          print_rec(os, k, prec, ren, counter, taken);
        }
      }
      if (paren) os << ")";
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool paren = parent_prec > 0;
      if (paren) os << "(";
      print_quant_block(os, f, ren, counter, taken);
      if (paren) os << ")";
      return;
    }
    case Formula::Kind::SoForall:
    case Formula::Kind::SoExists: {
      bool paren = parent_prec > 0;
      if (paren) os << "(";
      os << (f.is(Formula::Kind::SoForall) ? "forall2 " : "exists2 ")
         << f.name() << "/" << f.so_arity() << ". ";
      print_rec(os, f.kid(), 0, ren, counter, taken);
      if (paren) os << ")";
      return;
    }
    case Formula::Kind::CountExists: {
      bool paren = parent_prec > 0;
      if (paren) os << "(";
      os << "exists>=" << f.count() << " " << display_var(f.name(), ren, counter, taken) << ". ";
      print_rec(os, f.kid(), 0, ren, counter, taken);
      if (paren) os << ")";
      return;
    }
  }
  throw error("unreachable kind in printer");
}

std::set<std::string> visible_names(const Formula& f) {
  std::set<std::string> out;
  for (auto& v : free_vars(f)) out.insert(v);
  for (auto& v : bound_vars(f))
    if (v.empty() || v[0] != '_') out.insert(v);
  for (auto& c : constants_of(f)) out.insert(c);
  return out;
}

} // namespace

std::string to_string(const Formula& f) {
  if (!f.valid()) return "<null>";
  std::ostringstream os;
  std::map<std::string, std::string> ren;
  int counter = 0;
  auto taken = visible_names(f);
  print_rec(os, f, 0, ren, counter, taken);
  return os.str();
}

std::string to_string(const Term& t) { return t.name; }

} // namespace fosg
