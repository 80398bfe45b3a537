#ifndef FOSG_CONFIG_HPP
#define FOSG_CONFIG_HPP

#include <cstdint>

namespace fosg {

// Resource limits and search depths shared across the pipeline.
struct Config {
  int cnf_clause_budget = 10000;   // distributive CNF hard cap
  int bounded_atom_budget = 24;    // max ground atoms (log2 of model count) per size
  int bounded_universe = 3;        // default bound for bounded-model fallbacks
  int max_gamma_k = 5;             // gamma_iterate cap
  int max_iterations = 20;         // wp fixpoint cap (maxH)
  int64_t ground_position_budget = 1 << 20; // explicit game positions
  int64_t ground_atom_budget = 1 << 20;     // ground atoms/clauses per SAT encoding
  int so_expand_budget = 4096;              // max tables when expanding an SO quantifier
  int sat_conflict_budget = 2'000'000;      // DPLL node cap
  bool approx = false;             // acceleration: drop oversized clauses
  int approx_literal_budget = 12;  // clause width cap in approx mode

  static const Config& defaults() {
    static Config c;
    return c;
  }
};

} // namespace fosg

#endif
