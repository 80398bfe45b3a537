#include "fosg/wp.hpp"

#include <chrono>

#include "fosg/decide.hpp"
#include "fosg/errors.hpp"
#include "fosg/normalize.hpp"

namespace fosg {

Formula wp_edge(const Game& g, const Edge& e, const Formula& psi) {
  for (auto& [p, ar] : pred_arities(psi))
    if (!g.sig.is_state(p))
      throw semantic_error("wp_edge: postcondition mentions non-state predicate " + p);
  Formula sub = apply_substitution(psi, e.theta, g.sig);
  if (!e.input_pred) return sub;
  const std::string& in = *e.input_pred;
  if (!mentions_pred(sub, in)) return sub;
  int ar = *g.sig.arity(in);
  return e.owner == Owner::A ? so_forall(in, ar, std::move(sub))
                             : so_exists(in, ar, std::move(sub));
}

Formula wp_path(const Game& g, const std::vector<const Edge*>& path, const Formula& psi) {
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (path[i]->target != path[i + 1]->source)
      throw semantic_error("wp_path: edges " + path[i]->id() + " and " + path[i + 1]->id() +
                           " do not compose");
  Formula cur = psi;
  for (auto it = path.rbegin(); it != path.rend(); ++it) cur = wp_edge(g, **it, cur);
  return cur;
}

namespace {

// Ψ_old implied by new conjunct? Order: syntactic, BSR, bounded models.
struct ImpliedOutcome {
  bool implied;
  bool bounded;
};

ImpliedOutcome implied_by_current(const Formula& current, const Formula& conjunct,
                                  const Config& cfg) {
  Formula c = simplify(conjunct);
  if (c.is_true()) return {true, false};
  Formula cur = simplify(current);
  if (equal(cur, c)) return {true, false};
  // conjunction-of-clauses fast path: conjunct clauses subset of current's
  Formula imp = implies(cur, c);
  if (in_bsr(imp)) return {bsr_valid(imp, cfg).valid, false};
  return {valid_bounded(imp, cfg.bounded_universe, cfg), true};
}

} // namespace

IterationResult iterate(const Game& g, const EliminateFn& eliminate,
                        const StrengthenFn& strengthen, int max_h, const Config& cfg,
                        const AssertionMap* initial) {
  if (max_h < 0) throw semantic_error("iterate: negative iteration cap");
  IterationResult res;
  for (auto& n : g.nodes) {
    Formula f = g.assertion_at(n);
    if (initial) {
      auto it = initial->find(n);
      if (it != initial->end()) f = simplify(land2(f, it->second));
    }
    res.psi[n] = simplify(f);
  }
  {
    IterationStep step;
    step.h = 0;
    step.psi = res.psi;
    for (auto& n : g.nodes) step.changed[n] = true;
    res.trace.push_back(std::move(step));
  }

  std::set<std::string> dirty(g.nodes.begin(), g.nodes.end());
  for (int h = 1; h <= max_h; ++h) {
    auto t0 = std::chrono::steady_clock::now();
    // recompute only nodes with a dirty successor
    std::set<std::string> work;
    for (auto& e : g.edges)
      if (dirty.count(e.target)) work.insert(e.source);
    if (work.empty()) {
      res.status = IterStatus::Fixed;
      break;
    }
    AssertionMap prev = res.psi;
    std::set<std::string> changed_now;
    IterationStep step;
    step.h = h;
    for (auto& n : g.nodes) step.changed[n] = false;
    for (auto& v : g.nodes) {
      if (!work.count(v)) continue;
      std::vector<Formula> conjuncts;
      for (auto* e : g.out_edges(v)) {
        Formula pre = wp_edge(g, *e, prev.at(e->target));
        if (has_so_quant(pre)) pre = eliminate(g, *e, pre);
        if (strengthen) pre = strengthen(pre);
        conjuncts.push_back(std::move(pre));
      }
      Formula add = simplify(land(std::move(conjuncts)));
      auto [implied, bounded] = implied_by_current(prev.at(v), add, cfg);
      if (bounded) res.bounded_confidence = true;
      if (!implied) {
        res.psi[v] = simplify(land2(prev.at(v), add));
        changed_now.insert(v);
        step.changed[v] = true;
      }
    }
    auto t1 = std::chrono::steady_clock::now();
    step.psi = res.psi;
    step.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    res.trace.push_back(std::move(step));
    if (changed_now.empty()) {
      res.status = IterStatus::Fixed;
      break;
    }
    dirty = std::move(changed_now);
  }
  return res;
}

VerdictResult safety_verdict(const Game& g, const IterationResult& iter, const Config& cfg) {
  VerdictResult out;
  // Unsafe when Init ∧ ¬Ψ^(h)[start] is satisfiable for a recorded h. The
  // fixpoint formulas only shrink, so the final map refutes first.
  const Formula& final_psi = iter.psi.at(g.start);
  Formula refute = land2(g.init, lnot(final_psi));
  BoundedSatResult sat{false, std::nullopt};
  bool exact_refute = false;
  if (in_bsr(lnot(refute))) {
    auto r = bsr_valid(lnot(refute), cfg);
    sat.sat = !r.valid;
    sat.model = r.countermodel;
    exact_refute = true;
  } else {
    sat = bounded_sat(refute, cfg.bounded_universe, cfg);
  }
  if (sat.sat) {
    out.verdict = Verdict::Unsafe;
    out.witness = sat.model;
    for (auto& step : iter.trace) {
      Formula at_h = step.psi.at(g.start);
      Formula r = land2(g.init, lnot(at_h));
      bool hit = in_bsr(lnot(r)) ? !bsr_valid(lnot(r), cfg).valid
                                 : bounded_sat(r, cfg.bounded_universe, cfg).sat;
      if (hit) {
        out.refuted_at_h = step.h;
        break;
      }
    }
    out.diagnostic = "Init reaches an assertion violation within " +
                     std::to_string(out.refuted_at_h) + " steps";
    return out;
  }
  if (iter.status == IterStatus::Fixed) {
    Formula imp = implies(g.init, final_psi);
    bool holds, exact;
    if (in_bsr(imp)) {
      holds = bsr_valid(imp, cfg).valid;
      exact = true;
    } else {
      holds = valid_bounded(imp, cfg.bounded_universe, cfg);
      exact = false;
    }
    if (holds) {
      out.verdict = Verdict::Safe;
      out.bounded_confidence = iter.bounded_confidence || !exact || !exact_refute;
      return out;
    }
    // fixed, no refutation up to the bound, boundary unprovable: the exact
    // case cannot end up here, so this is genuinely open
    (void)exact_refute;
    out.diagnostic = "fixpoint reached but Init does not imply Psi[start] up to the bound";
    out.verdict = Verdict::Unknown;
    out.bounded_confidence = true;
    return out;
  }
  out.verdict = Verdict::Unknown;
  out.diagnostic = "iteration cap reached before stabilization";
  out.bounded_confidence = iter.bounded_confidence;
  return out;
}

} // namespace fosg
