#ifndef FOSG_GAME_HPP
#define FOSG_GAME_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fosg/formula.hpp"
#include "fosg/signature.hpp"
#include "fosg/subst.hpp"

namespace fosg {

enum class Owner { A, B };

struct Edge {
  std::string source, target;
  Substitution theta;
  Owner owner = Owner::A;
  std::optional<std::string> input_pred;

  std::string id() const { return source + "->" + target; }
};

// FO safety game: control-flow graph with ownership-partitioned edges,
// initial condition and per-node assertion (defaulting to TRUE).
struct Game {
  Signature sig;
  std::vector<std::string> nodes; // declaration order
  std::string start;
  std::vector<Edge> edges;
  Formula init = f_true();
  std::map<std::string, Formula> assertion;

  Formula assertion_at(const std::string& node) const {
    auto it = assertion.find(node);
    return it == assertion.end() ? f_true() : it->second;
  }
  bool has_node(const std::string& n) const;
  std::vector<const Edge*> out_edges(const std::string& node) const;

  // Full invariant check; throws semantic_error with a description.
  void validate() const;

  // All B input predicates occurring on edges.
  std::set<std::string> b_preds_used() const;
  bool is_acyclic() const;
  // Length of the longest simple path from start (acyclic games only).
  int longest_path_from_start() const;
};

// Positional strategy: B predicate -> (formal params, defining formula over
// state predicates and constants).
struct Strategy {
  std::map<std::string, Substitution::Entry> map;

  bool covers(const std::string& pred) const { return map.count(pred) != 0; }
};

// Substitute σ(B) for every occurrence of B in edge substitutions. The result
// has no ℛ_B occurrences; former B-edges become input-free edges.
// Throws semantic_error when σ misses a used B predicate or a body
// violates the strategy invariants (free vars, state preds only).
Game apply_strategy(const Game& g, const Strategy& sigma);

// Textual format of the game file; parse_game ∘ pretty_print is the identity
// up to canonical formula form.
std::string pretty_print(const Game& g);

} // namespace fosg

#endif
