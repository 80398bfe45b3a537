#include "fosg/game.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "fosg/errors.hpp"
#include "fosg/pretty.hpp"

namespace fosg {

bool Game::has_node(const std::string& n) const {
  return std::find(nodes.begin(), nodes.end(), n) != nodes.end();
}

std::vector<const Edge*> Game::out_edges(const std::string& node) const {
  std::vector<const Edge*> out;
  for (auto& e : edges)
    if (e.source == node) out.push_back(&e);
  return out;
}

std::set<std::string> Game::b_preds_used() const {
  std::set<std::string> out;
  for (auto& e : edges)
    for (auto& p : e.theta.input_preds_used(sig))
      if (sig.is_input_b(p)) out.insert(p);
  return out;
}

void Game::validate() const {
  sig.validate();
  if (!has_node(start)) throw semantic_error("start node " + start + " not declared");
  std::set<std::string> inputs_seen;
  for (auto& e : edges) {
    if (!has_node(e.source) || !has_node(e.target))
      throw semantic_error("edge " + e.id() + " references undeclared node");
    auto used = e.theta.input_preds_used(sig);
    if (e.input_pred) {
      if (!sig.is_input(*e.input_pred))
        throw semantic_error("edge " + e.id() + ": unknown input predicate " + *e.input_pred);
      for (auto& p : used)
        if (p != *e.input_pred)
          throw semantic_error("edge " + e.id() + ": multiple input predicates (" + p + ", " +
                               *e.input_pred + ")");
      if (!inputs_seen.insert(*e.input_pred).second)
        throw semantic_error("input predicate " + *e.input_pred + " used on more than one edge");
      bool is_b = sig.is_input_b(*e.input_pred);
      if (is_b && e.owner != Owner::B)
        throw semantic_error("edge " + e.id() + ": B predicate " + *e.input_pred + " on an A-edge");
      if (!is_b && e.owner == Owner::B)
        throw semantic_error("edge " + e.id() + ": A predicate " + *e.input_pred + " on a B-edge");
    } else if (!used.empty()) {
      throw semantic_error("edge " + e.id() + ": input predicate " + *used.begin() +
                           " used without input declaration");
    }
    // substitution entries well-formed
    for (auto& [pred, entry] : e.theta.map) {
      auto ar = sig.arity(pred);
      if (!ar || !sig.is_state(pred))
        throw semantic_error("edge " + e.id() + ": substitution for non-state predicate " + pred);
      if (static_cast<int>(entry.params.size()) != *ar)
        throw semantic_error("edge " + e.id() + ": wrong parameter count for " + pred);
      for (auto& [p, par] : pred_arities(entry.body)) {
        auto want = sig.arity(p);
        if (!want) throw semantic_error("edge " + e.id() + ": unknown predicate " + p);
        if (*want != par)
          throw semantic_error("edge " + e.id() + ": arity mismatch for " + p);
      }
      std::set<std::string> allowed(entry.params.begin(), entry.params.end());
      for (auto& v : free_vars(entry.body))
        if (!allowed.count(v))
          throw semantic_error("edge " + e.id() + ": free variable " + v + " in body of " + pred);
    }
  }
  auto check_closed = [&](const Formula& f, const std::string& what) {
    if (!free_vars(f).empty())
      throw semantic_error(what + " has free variables");
    for (auto& [p, ar] : pred_arities(f)) {
      if (!sig.is_state(p)) throw semantic_error(what + " mentions non-state predicate " + p);
      if (*sig.arity(p) != ar) throw semantic_error(what + ": arity mismatch for " + p);
    }
  };
  check_closed(init, "init");
  for (auto& [n, f] : assertion) {
    if (!has_node(n)) throw semantic_error("assertion for undeclared node " + n);
    check_closed(f, "assertion at " + n);
  }
}

bool Game::is_acyclic() const {
  std::map<std::string, int> indeg;
  for (auto& n : nodes) indeg[n] = 0;
  for (auto& e : edges) indeg[e.target]++;
  std::vector<std::string> queue;
  for (auto& n : nodes)
    if (indeg[n] == 0) queue.push_back(n);
  size_t seen = 0;
  while (!queue.empty()) {
    auto n = queue.back();
    queue.pop_back();
    ++seen;
    for (auto& e : edges)
      if (e.source == n && --indeg[e.target] == 0) queue.push_back(e.target);
  }
  return seen == nodes.size();
}

int Game::longest_path_from_start() const {
  if (!is_acyclic()) throw semantic_error("longest path requested for cyclic game");
  std::map<std::string, int> best;
  // simple memoized DFS
  std::function<int(const std::string&)> go = [&](const std::string& n) -> int {
    auto it = best.find(n);
    if (it != best.end()) return it->second;
    int b = 0;
    for (auto* e : out_edges(n)) b = std::max(b, 1 + go(e->target));
    best[n] = b;
    return b;
  };
  return go(start);
}

Game apply_strategy(const Game& g, const Strategy& sigma) {
  for (auto& [b, entry] : sigma.map) {
    if (!g.sig.is_input_b(b)) throw semantic_error("strategy for non-B predicate " + b);
    std::set<std::string> allowed(entry.params.begin(), entry.params.end());
    for (auto& v : free_vars(entry.body))
      if (!allowed.count(v))
        throw semantic_error("strategy body for " + b + " has stray free variable " + v);
    for (auto& p : preds_of(entry.body))
      if (!g.sig.is_state(p))
        throw semantic_error("strategy body for " + b + " mentions non-state predicate " + p);
  }
  Substitution repl;
  for (auto& [b, entry] : sigma.map) repl.map[b] = entry;

  Game out = g;
  out.edges.clear();
  for (auto& e : g.edges) {
    Edge ne = e;
    bool was_b = e.owner == Owner::B;
    if (was_b && e.input_pred) {
      if (!sigma.covers(*e.input_pred))
        throw semantic_error("strategy does not cover B predicate " + *e.input_pred);
    }
    for (auto& [pred, entry] : e.theta.map) {
      Formula body = apply_substitution_all(entry.body, repl);
      ne.theta.map[pred] = Substitution::Entry{entry.params, std::move(body)};
    }
    if (was_b) {
      ne.input_pred.reset();
      ne.owner = Owner::A; // resolved edge carries no choice
    }
    out.edges.push_back(std::move(ne));
  }
  return out;
}

std::string pretty_print(const Game& g) {
  std::ostringstream os;
  auto family = [&](const char* kw, const std::map<std::string, int>& m) {
    if (m.empty()) return;
    os << kw << " ";
    bool first = true;
    for (auto& [p, ar] : m) {
      if (!first) os << ", ";
      os << p << "/" << ar;
      first = false;
    }
    os << ";\n";
  };
  if (!g.sig.constants.empty()) {
    os << "constants ";
    for (size_t i = 0; i < g.sig.constants.size(); ++i) {
      if (i) os << ", ";
      os << g.sig.constants[i];
    }
    os << ";\n";
  }
  family("state", g.sig.state_preds);
  family("inputA", g.sig.input_preds_a);
  family("inputB", g.sig.input_preds_b);
  for (auto& n : g.nodes) {
    os << "node " << n;
    if (n == g.start) os << " start";
    os << ";\n";
  }
  for (auto& e : g.edges) {
    os << "edge " << e.source << " -> " << e.target << " owner "
       << (e.owner == Owner::A ? "A" : "B");
    if (e.input_pred) os << " input " << *e.input_pred;
    os << " {";
    bool any = false;
    for (auto& [pred, entry] : e.theta.map) {
      if (e.theta.is_identity_on(pred)) continue;
      os << "\n  " << pred << "(";
      for (size_t i = 0; i < entry.params.size(); ++i) {
        if (i) os << ", ";
        os << entry.params[i];
      }
      os << ") := " << to_string(entry.body) << ";";
      any = true;
    }
    os << (any ? "\n}" : " }") << "\n";
  }
  os << "init " << to_string(g.init) << ";\n";
  // Factor the common all-nodes assertion when present.
  bool uniform = !g.assertion.empty() && g.assertion.size() == g.nodes.size();
  if (uniform) {
    const Formula& first = g.assertion.begin()->second;
    for (auto& [_, f] : g.assertion)
      if (!equal(f, first)) { uniform = false; break; }
  }
  if (uniform) {
    os << "assert all: " << to_string(g.assertion.begin()->second) << ";\n";
  } else {
    for (auto& [n, f] : g.assertion)
      if (!f.is_true()) os << "assert " << n << ": " << to_string(f) << ";\n";
  }
  return os.str();
}

} // namespace fosg
