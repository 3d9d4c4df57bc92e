#pragma once

#include "dagmc/instance.hpp"
#include "dagmc/oracle.hpp"

namespace dagmc {

// Simple undirected graph on vertices 0..n-1.
struct UndirectedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // normalized (min,max), sorted

  static UndirectedGraph build(int n, std::vector<std::pair<int, int>> edges);
  bool has_edge(int u, int v) const;
};

// Clique -> DAG multicut: one 2n^2+2 vertex chain gadget per ordered index
// pair encodes the choice of an adjacent vertex pair, light consistency
// connectors tie the gadgets together. Heavy weight D = 2(t+1)^2, budget
// p = 2t(t-1)D + t(t+1)/2. The result is YES iff G has a clique of size t.
WeightedArcInstance gen_clique_instance(const UndirectedGraph& g, int t);

// Max-Cut -> Skew Multicut with terminals s1,s2,t1,t2 and pairs
// {(s1,t1),(s1,t2),(s2,t2)}: one heavy path per vertex encodes the side of
// the cut, a 4-vertex connector per edge pays one light arc when the
// endpoints disagree and two when they agree. D = 2m+1, p = nD + 2m - t.
// YES iff G has a cut with at least t crossing edges.
WeightedArcInstance gen_maxcut_skew_instance(const UndirectedGraph& g, int t);

// Adds an infinite arc (t2,t1) to a skew instance and keeps only the pairs
// (s1,t1) and (s2,t2); the answer is preserved.
WeightedArcInstance skew_to_two_pairs(const WeightedArcInstance& inst);

// Weighted arc-deletion -> unweighted vertex-deletion: each arc of weight w
// becomes w internally disjoint length-2 paths with deletable middles
// (infinite realized as budget+1), and each nonterminal vertex becomes
// budget+1 interchangeable copies so that only middles are worth deleting.
DagInstance expand_to_vertex_instance(const WeightedArcInstance& inst);

}  // namespace dagmc
