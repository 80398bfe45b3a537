#include "fosg/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "fosg/errors.hpp"

namespace fosg {

namespace {

enum class Tok {
  Ident, Number, LParen, RParen, LBrace, RBrace, Comma, Dot, Semi, Colon,
  Arrow, Iff, Amp, Bar, Bang, Eq, Neq, Assign, AddAssign, SubAssign,
  Slash, Ge, End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }
  bool at(Tok k) const { return cur_.kind == k; }
  bool at_kw(const char* kw) const { return cur_.kind == Tok::Ident && cur_.text == kw; }
  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return take();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg + " (found '" + cur_.text + "')", cur_.line, cur_.col);
  }

private:
  void advance() {
    skip_ws();
    cur_ = {Tok::End, "", line_, col_};
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    int line = line_, col = col_;
    auto tok = [&](Tok k, std::string text, size_t len) {
      cur_ = {k, std::move(text), line, col};
      for (size_t i = 0; i < len; ++i) bump();
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
              src_[pos_] == '\''))
        bump();
      cur_ = {Tok::Ident, src_.substr(start, pos_ - start), line, col};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
      cur_ = {Tok::Number, src_.substr(start, pos_ - start), line, col};
      return;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    auto three = [&](const char* s) {
      return pos_ + 2 < src_.size() && src_.compare(pos_, 3, s) == 0;
    };
    if (three("+:=")) return tok(Tok::AddAssign, "+:=", 3);
    if (three("-:=")) return tok(Tok::SubAssign, "-:=", 3);
    if (three("<->")) return tok(Tok::Iff, "<->", 3);
    if (two(':', '=')) return tok(Tok::Assign, ":=", 2);
    if (two('-', '>')) return tok(Tok::Arrow, "->", 2);
    if (two('!', '=')) return tok(Tok::Neq, "!=", 2);
    if (two('>', '=')) return tok(Tok::Ge, ">=", 2);
    switch (c) {
      case '(': return tok(Tok::LParen, "(", 1);
      case ')': return tok(Tok::RParen, ")", 1);
      case '{': return tok(Tok::LBrace, "{", 1);
      case '}': return tok(Tok::RBrace, "}", 1);
      case ',': return tok(Tok::Comma, ",", 1);
      case '.': return tok(Tok::Dot, ".", 1);
      case ';': return tok(Tok::Semi, ";", 1);
      case ':': return tok(Tok::Colon, ":", 1);
      case '&': return tok(Tok::Amp, "&", 1);
      case '|': return tok(Tok::Bar, "|", 1);
      case '!': return tok(Tok::Bang, "!", 1);
      case '=': return tok(Tok::Eq, "=", 1);
      case '/': return tok(Tok::Slash, "/", 1);
      default:
        throw parse_error(std::string("unexpected character '") + c + "'", line, col);
    }
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_;
};

bool reserved_name(const std::string& s) { return !s.empty() && s[0] == '_'; }

bool is_keyword(const std::string& s) {
  static const std::set<std::string> kws = {
      "forall", "exists", "forall2", "exists2", "true", "false"};
  return kws.count(s) != 0;
}

// Recursive-descent formula parser over a fixed signature. Variables must be
// bound or whitelisted; bare identifiers resolve to nullary atoms or
// constants depending on the declarations.
class FormulaParser {
public:
  FormulaParser(Lexer& lx, const Signature& sig, std::set<std::string> free_ok)
      : lx_(lx), sig_(sig), scope_(std::move(free_ok)) {}

  Formula parse() { return parse_iff(); }

private:
  Formula parse_iff() {
    Formula f = parse_imp();
    while (lx_.at(Tok::Iff)) {
      lx_.take();
      f = iff(f, parse_imp());
    }
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (lx_.at(Tok::Arrow)) {
      lx_.take();
      return implies(f, parse_imp()); // right-assoc
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (lx_.at(Tok::Bar)) {
      lx_.take();
      f = lor2(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (lx_.at(Tok::Amp)) {
      lx_.take();
      f = land2(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    if (lx_.at(Tok::Bang)) {
      lx_.take();
      return lnot(parse_unary());
    }
    if (lx_.at_kw("forall") || lx_.at_kw("exists")) {
      bool univ = lx_.peek().text == "forall";
      lx_.take();
      if (!univ && lx_.at(Tok::Ge)) { // counting: exists>=N x. e
        lx_.take();
        Token n = lx_.expect(Tok::Number, "count");
        Token v = lx_.expect(Tok::Ident, "variable");
        check_fresh_var(v);
        lx_.expect(Tok::Dot, "'.'");
        scope_.insert(v.text);
        Formula body = parse_iff();
        scope_.erase(v.text);
        return count_exists(std::stoi(n.text), v.text, std::move(body));
      }
      std::vector<std::string> vars;
      while (true) {
        Token t = lx_.expect(Tok::Ident, "variable");
        check_fresh_var(t);
        vars.push_back(t.text);
        if (lx_.at(Tok::Comma)) { lx_.take(); continue; }
        break;
      }
      lx_.expect(Tok::Dot, "'.'");
      for (auto& v : vars) scope_.insert(v);
      Formula body = parse_iff();
      for (auto& v : vars) scope_.erase(v);
      return univ ? forall_many(vars, std::move(body)) : exists_many(vars, std::move(body));
    }
    if (lx_.at_kw("forall2") || lx_.at_kw("exists2")) {
      bool univ = lx_.peek().text == "forall2";
      lx_.take();
      Token p = lx_.expect(Tok::Ident, "predicate");
      lx_.expect(Tok::Slash, "'/'");
      Token n = lx_.expect(Tok::Number, "arity");
      lx_.expect(Tok::Dot, "'.'");
      so_scope_.insert({p.text, std::stoi(n.text)});
      Formula body = parse_iff();
      so_scope_.erase({p.text, std::stoi(n.text)});
      return univ ? so_forall(p.text, std::stoi(n.text), std::move(body))
                  : so_exists(p.text, std::stoi(n.text), std::move(body));
    }
    return parse_primary();
  }

  Formula parse_primary() {
    if (lx_.at(Tok::LParen)) {
      lx_.take();
      Formula f = parse_iff();
      lx_.expect(Tok::RParen, "')'");
      return f;
    }
    if (lx_.at_kw("true")) { lx_.take(); return f_true(); }
    if (lx_.at_kw("false")) { lx_.take(); return f_false(); }
    Token id = lx_.expect(Tok::Ident, "identifier");
    if (reserved_name(id.text))
      throw parse_error("identifier '" + id.text + "' uses the reserved '_' prefix", id.line, id.col);
    if (lx_.at(Tok::LParen)) {
      lx_.take();
      Terms args;
      if (!lx_.at(Tok::RParen)) {
        while (true) {
          args.push_back(parse_term());
          if (lx_.at(Tok::Comma)) { lx_.take(); continue; }
          break;
        }
      }
      lx_.expect(Tok::RParen, "')'");
      return make_atom(id, std::move(args));
    }
    if (lx_.at(Tok::Eq) || lx_.at(Tok::Neq)) {
      bool negated = lx_.at(Tok::Neq);
      lx_.take();
      Term lhs = resolve_term(id);
      Term rhs = parse_term();
      return negated ? neq(lhs, rhs) : eq(lhs, rhs);
    }
    // bare identifier: nullary atom
    return make_atom(id, {});
  }

  Term parse_term() {
    Token id = lx_.expect(Tok::Ident, "term");
    return resolve_term(id);
  }

  Term resolve_term(const Token& id) {
    if (reserved_name(id.text))
      throw parse_error("identifier '" + id.text + "' uses the reserved '_' prefix", id.line, id.col);
    if (scope_.count(id.text)) return Term::var(id.text);
    if (sig_.is_constant(id.text)) return Term::cons(id.text);
    throw parse_error("unknown variable or constant '" + id.text + "'", id.line, id.col);
  }

  Formula make_atom(const Token& id, Terms args) {
    // SO-bound predicates shadow the signature
    for (auto& [p, ar] : so_scope_) {
      if (p == id.text) {
        if (static_cast<int>(args.size()) != ar)
          throw parse_error("arity mismatch for " + id.text, id.line, id.col);
        return atom(id.text, std::move(args));
      }
    }
    auto ar = sig_.arity(id.text);
    if (!ar) throw parse_error("unknown predicate '" + id.text + "'", id.line, id.col);
    if (*ar != static_cast<int>(args.size()))
      throw parse_error("predicate " + id.text + " expects " + std::to_string(*ar) +
                            " arguments, got " + std::to_string(args.size()),
                        id.line, id.col);
    return atom(id.text, std::move(args));
  }

  void check_fresh_var(const Token& t) {
    if (reserved_name(t.text))
      throw parse_error("variable '" + t.text + "' uses the reserved '_' prefix", t.line, t.col);
    if (is_keyword(t.text)) throw parse_error("keyword used as variable", t.line, t.col);
    if (sig_.is_pred(t.text) || sig_.is_constant(t.text))
      throw parse_error("variable '" + t.text + "' collides with a declared name", t.line, t.col);
  }

  Lexer& lx_;
  const Signature& sig_;
  std::set<std::string> scope_;
  std::set<std::pair<std::string, int>> so_scope_;
};

class GameParser {
public:
  explicit GameParser(const std::string& src) : lx_(src) {}

  Game parse() {
    while (!lx_.at(Tok::End)) statement();
    finish();
    return g_;
  }

private:
  void statement() {
    Token kw = lx_.expect(Tok::Ident, "statement keyword");
    if (kw.text == "constants") parse_constants();
    else if (kw.text == "state") parse_family(g_.sig.state_preds);
    else if (kw.text == "inputA") parse_family(g_.sig.input_preds_a);
    else if (kw.text == "inputB") parse_family(g_.sig.input_preds_b);
    else if (kw.text == "node") parse_node();
    else if (kw.text == "edge") parse_edge();
    else if (kw.text == "init") parse_init();
    else if (kw.text == "assert") parse_assert();
    else throw parse_error("unknown statement '" + kw.text + "'", kw.line, kw.col);
  }

  void parse_constants() {
    while (true) {
      Token t = lx_.expect(Tok::Ident, "constant name");
      check_name(t);
      g_.sig.constants.push_back(t.text);
      if (lx_.at(Tok::Comma)) { lx_.take(); continue; }
      break;
    }
    lx_.expect(Tok::Semi, "';'");
  }

  void parse_family(std::map<std::string, int>& fam) {
    while (true) {
      Token t = lx_.expect(Tok::Ident, "predicate name");
      check_name(t);
      lx_.expect(Tok::Slash, "'/'");
      Token n = lx_.expect(Tok::Number, "arity");
      if (fam.count(t.text)) throw parse_error("duplicate predicate " + t.text, t.line, t.col);
      fam[t.text] = std::stoi(n.text);
      if (lx_.at(Tok::Comma)) { lx_.take(); continue; }
      break;
    }
    lx_.expect(Tok::Semi, "';'");
  }

  void parse_node() {
    Token t = lx_.expect(Tok::Ident, "node name");
    check_name(t);
    if (std::find(g_.nodes.begin(), g_.nodes.end(), t.text) != g_.nodes.end())
      throw parse_error("duplicate node " + t.text, t.line, t.col);
    g_.nodes.push_back(t.text);
    if (lx_.at_kw("start")) {
      lx_.take();
      if (!g_.start.empty()) throw parse_error("second start node", t.line, t.col);
      g_.start = t.text;
    }
    lx_.expect(Tok::Semi, "';'");
  }

  void parse_edge() {
    Edge e;
    Token s = lx_.expect(Tok::Ident, "source node");
    lx_.expect(Tok::Arrow, "'->'");
    Token t = lx_.expect(Tok::Ident, "target node");
    e.source = s.text;
    e.target = t.text;
    Token kw = lx_.expect(Tok::Ident, "'owner'");
    if (kw.text != "owner") throw parse_error("expected 'owner'", kw.line, kw.col);
    Token o = lx_.expect(Tok::Ident, "'A' or 'B'");
    if (o.text == "A") e.owner = Owner::A;
    else if (o.text == "B") e.owner = Owner::B;
    else throw parse_error("owner must be A or B", o.line, o.col);
    if (lx_.at_kw("input")) {
      lx_.take();
      Token p = lx_.expect(Tok::Ident, "input predicate");
      e.input_pred = p.text;
    }
    lx_.expect(Tok::LBrace, "'{'");
    g_.sig.validate();
    while (!lx_.at(Tok::RBrace)) {
      Token pred = lx_.expect(Tok::Ident, "state predicate");
      auto ar = g_.sig.arity(pred.text);
      if (!ar || !g_.sig.is_state(pred.text))
        throw parse_error("unknown state predicate '" + pred.text + "'", pred.line, pred.col);
      std::vector<std::string> params;
      if (lx_.at(Tok::LParen)) {
        lx_.take();
        if (!lx_.at(Tok::RParen)) {
          while (true) {
            Token v = lx_.expect(Tok::Ident, "parameter");
            check_name(v);
            if (std::find(params.begin(), params.end(), v.text) != params.end())
              throw parse_error("duplicate parameter " + v.text, v.line, v.col);
            params.push_back(v.text);
            if (lx_.at(Tok::Comma)) { lx_.take(); continue; }
            break;
          }
        }
        lx_.expect(Tok::RParen, "')'");
      }
      if (static_cast<int>(params.size()) != *ar)
        throw parse_error("predicate " + pred.text + " has arity " + std::to_string(*ar),
                          pred.line, pred.col);
      Tok op = lx_.peek().kind;
      if (op != Tok::Assign && op != Tok::AddAssign && op != Tok::SubAssign)
        lx_.fail("expected ':=', '+:=' or '-:='");
      lx_.take();
      std::set<std::string> free_ok(params.begin(), params.end());
      FormulaParser fp(lx_, g_.sig, free_ok);
      Formula rhs = fp.parse();
      lx_.expect(Tok::Semi, "';'");
      Terms self_args;
      for (auto& p : params) self_args.push_back(Term::var(p));
      Formula self = atom(pred.text, self_args);
      // +:= and -:= desugar to weak addition / subtraction
      if (op == Tok::AddAssign) rhs = lor2(self, std::move(rhs));
      else if (op == Tok::SubAssign) rhs = land2(self, lnot(std::move(rhs)));
      if (e.theta.has(pred.text))
        throw parse_error("duplicate assignment for " + pred.text, pred.line, pred.col);
      e.theta.set(pred.text, std::move(params), std::move(rhs));
    }
    lx_.expect(Tok::RBrace, "'}'");
    // unassigned predicates keep their value
    for (auto& [p, ar] : g_.sig.state_preds)
      if (!e.theta.has(p)) e.theta.map[p] = Substitution::identity_entry(p, ar);
    g_.edges.push_back(std::move(e));
  }

  void parse_init() {
    FormulaParser fp(lx_, g_.sig, {});
    g_.init = fp.parse();
    lx_.expect(Tok::Semi, "';'");
  }

  void parse_assert() {
    Token n = lx_.expect(Tok::Ident, "node name or 'all'");
    lx_.expect(Tok::Colon, "':'");
    FormulaParser fp(lx_, g_.sig, {});
    Formula f = fp.parse();
    lx_.expect(Tok::Semi, "';'");
    if (n.text == "all") {
      all_assert_ = f;
    } else {
      asserts_[n.text] = f;
    }
  }

  void finish() {
    if (g_.nodes.empty()) throw semantic_error("game has no nodes");
    if (g_.start.empty()) throw semantic_error("no start node declared");
    for (auto& node : g_.nodes) {
      auto it = asserts_.find(node);
      if (it != asserts_.end()) g_.assertion[node] = it->second;
      else if (all_assert_.valid()) g_.assertion[node] = all_assert_;
    }
    for (auto& [n, _] : asserts_)
      if (!g_.has_node(n)) throw semantic_error("assertion for undeclared node " + n);
    g_.validate();
  }

  void check_name(const Token& t) {
    if (reserved_name(t.text))
      throw parse_error("name '" + t.text + "' uses the reserved '_' prefix", t.line, t.col);
    if (is_keyword(t.text)) throw parse_error("keyword used as name", t.line, t.col);
  }

  Lexer lx_;
  Game g_;
  std::map<std::string, Formula> asserts_;
  Formula all_assert_;
};

} // namespace

Game parse_game(const std::string& text) {
  GameParser p(text);
  return p.parse();
}

Formula parse_formula(const std::string& text, const Signature& sig,
                      const std::vector<std::string>& free_vars) {
  Lexer lx(text);
  FormulaParser fp(lx, sig, std::set<std::string>(free_vars.begin(), free_vars.end()));
  Formula f = fp.parse();
  if (!lx.at(Tok::End)) lx.fail("trailing input after formula");
  return f;
}

NiSpec parse_nispec(const std::string& text, const Game& g) {
  NiSpec spec;
  Lexer lx(text);
  while (!lx.at(Tok::End)) {
    Token kw = lx.expect(Tok::Ident, "statement keyword");
    if (kw.text == "observer") {
      Token t = lx.expect(Tok::Ident, "observer constant");
      spec.observer = t.text;
      lx.expect(Tok::Semi, "';'");
    } else if (kw.text == "secret") {
      Token p = lx.expect(Tok::Ident, "input predicate");
      if (!g.sig.is_input_a(p.text))
        throw parse_error("secret " + p.text + " is not an A input predicate", p.line, p.col);
      Token d = lx.expect(Tok::Ident, "'declass'");
      if (d.text != "declass") throw parse_error("expected 'declass'", d.line, d.col);
      int ar = *g.sig.arity(p.text);
      auto params = formal_params(ar);
      std::vector<std::string> free_ok = params;
      if (spec.observer.empty())
        throw parse_error("observer must be declared before secrets", p.line, p.col);
      Signature sig2 = g.sig;
      if (!sig2.is_constant(spec.observer)) sig2.constants.push_back(spec.observer);
      FormulaParser fp(lx, sig2, std::set<std::string>(free_ok.begin(), free_ok.end()));
      spec.declass[p.text] = fp.parse();
      lx.expect(Tok::Semi, "';'");
    } else if (kw.text == "admissible") {
      Token n = lx.expect(Tok::Ident, "node name");
      if (!g.has_node(n.text))
        throw parse_error("unknown node " + n.text, n.line, n.col);
      lx.expect(Tok::Colon, "':'");
      std::set<std::string> preds;
      while (true) {
        Token p = lx.expect(Tok::Ident, "state predicate");
        if (!g.sig.is_state(p.text))
          throw parse_error("unknown state predicate " + p.text, p.line, p.col);
        preds.insert(p.text);
        if (lx.at(Tok::Comma)) { lx.take(); continue; }
        break;
      }
      lx.expect(Tok::Semi, "';'");
      spec.admissible[n.text] = std::move(preds);
    } else {
      throw parse_error("unknown statement '" + kw.text + "'", kw.line, kw.col);
    }
  }
  if (spec.observer.empty()) throw semantic_error("nispec declares no observer");
  return spec;
}

std::map<std::string, Formula> parse_invariant(const std::string& text, const Game& g) {
  std::map<std::string, Formula> out;
  Formula all;
  Lexer lx(text);
  while (!lx.at(Tok::End)) {
    Token kw = lx.expect(Tok::Ident, "'invariant'");
    if (kw.text != "invariant") throw parse_error("expected 'invariant'", kw.line, kw.col);
    Token n = lx.expect(Tok::Ident, "node name or 'all'");
    lx.expect(Tok::Colon, "':'");
    FormulaParser fp(lx, g.sig, {});
    Formula f = fp.parse();
    lx.expect(Tok::Semi, "';'");
    if (n.text == "all") all = f;
    else if (!g.has_node(n.text)) throw semantic_error("invariant for undeclared node " + n.text);
    else out[n.text] = f;
  }
  if (all.valid()) {
    for (auto& node : g.nodes)
      if (!out.count(node)) out[node] = all;
  }
  return out;
}

Strategy parse_strategy(const std::string& text, const Game& g) {
  Strategy s;
  Lexer lx(text);
  while (!lx.at(Tok::End)) {
    Token kw = lx.expect(Tok::Ident, "'strategy'");
    if (kw.text != "strategy") throw parse_error("expected 'strategy'", kw.line, kw.col);
    Token p = lx.expect(Tok::Ident, "B predicate");
    if (!g.sig.is_input_b(p.text))
      throw parse_error(p.text + " is not a B input predicate", p.line, p.col);
    std::vector<std::string> params;
    lx.expect(Tok::LParen, "'('");
    if (!lx.at(Tok::RParen)) {
      while (true) {
        Token v = lx.expect(Tok::Ident, "parameter");
        params.push_back(v.text);
        if (lx.at(Tok::Comma)) { lx.take(); continue; }
        break;
      }
    }
    lx.expect(Tok::RParen, "')'");
    if (static_cast<int>(params.size()) != *g.sig.arity(p.text))
      throw parse_error("wrong parameter count for " + p.text, p.line, p.col);
    lx.expect(Tok::Assign, "':='");
    FormulaParser fp(lx, g.sig, std::set<std::string>(params.begin(), params.end()));
    Formula body = fp.parse();
    lx.expect(Tok::Semi, "';'");
    s.map[p.text] = Substitution::Entry{std::move(params), std::move(body)};
  }
  return s;
}

} // namespace fosg
