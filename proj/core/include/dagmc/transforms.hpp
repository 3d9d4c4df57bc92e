#pragma once

#include "dagmc/instance.hpp"
#include "dagmc/separators.hpp"

namespace dagmc {

// True when all terminals are pairwise distinct, sources have in-degree 0
// and sinks out-degree 0 (everything the solver relies on).
bool is_normalized(const DagInstance& inst);

// Rewrites an instance so that is_normalized holds, preserving the YES/NO
// answer. Every terminal vertex is replaced by budget+1 interchangeable
// nonterminal copies and each pair gets fresh terminals wired to the old
// neighborhoods; fresh ids are minted above the original maximum. Any
// solution of the result maps back by intersecting with the original vertex
// ids.
DagInstance normalize(const DagInstance& inst);

// Deletes nonterminal v and spends one unit of budget.
DagInstance kill(const DagInstance& inst, VertexId v);

// Splices nonterminal v out: v is deleted and every in-neighbor is connected
// to every out-neighbor. Connectivity between the survivors is preserved.
DagInstance bypass(const DagInstance& inst, VertexId v);

// Bypasses every vertex of X; the result is order-independent. Arc (u,v)
// exists in the result iff the input has a u->v path whose internal vertices
// all lie in X.
DagInstance torso(const DagInstance& inst, const VertexSet& x);

// Internal-ish helper: plain deletion of a vertex set, budget unchanged.
// Terminals may not be deleted.
DagInstance remove_vertices(const DagInstance& inst, const VertexSet& x);

struct DegreeBranchChild {
  int pair_index;       // 0-based index into terminal_pairs()
  VertexId via_vertex;  // the mincut vertex pushed onto the sink
  DagInstance instance;
};

struct DegreeBranchResult {
  std::vector<DegreeBranchChild> children;
  DagInstance kept;  // the degree-reduced instance
};

// The degree-reduced graph: source arcs are rewired onto the per-pair
// mincuts closest to the sources, bounding the sources' total out-degree by
// r*p while preserving per-pair cut sizes and the potential.
// Requires a normalized instance whose per-pair cuts are all within budget.
DagInstance degree_reduced(const DagInstance& inst);

// One child per (pair i, v in B_i): add arc (v, t_i) and bypass v; the i-th
// cut strictly increases in the child, so its potential strictly drops.
// kept is the degree-reduced instance. Children are emitted in (pair index
// ascending, topological position ascending) order.
DegreeBranchResult degree_branch(const DagInstance& inst);

}  // namespace dagmc
