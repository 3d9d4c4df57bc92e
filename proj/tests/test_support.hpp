#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "dagmc/detail/sorted_set.hpp"
#include "dagmc/gadgets.hpp"
#include "dagmc/instance.hpp"

// Shared fixtures and independent brute-force oracles for the test suites.
// Everything here is deliberately naive: the value of these helpers is that
// they are obviously correct, not that they are fast.

namespace dagmc::testing {

using Rng = std::mt19937_64;

inline DagInstance path_instance(int budget = 1) {
  return DagInstance::build({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}}, {{1, 4}}, budget);
}

// s=1 -> a=2, s -> b=3, a -> t=4, b -> t
inline DagInstance diamond_instance(int budget) {
  return DagInstance::build({1, 2, 3, 4}, {{1, 2}, {1, 3}, {2, 4}, {3, 4}}, {{1, 4}},
                            budget);
}

struct RawOptions {
  int min_n = 3;
  int max_n = 10;
  int max_r = 3;
  int max_p = 3;
  double degenerate_pair_chance = 0.0;  // chance of an s_i == t_i pair
};

inline DagInstance random_raw_instance(Rng& rng, const RawOptions& opt = {}) {
  std::uniform_int_distribution<int> n_dist(opt.min_n, opt.max_n);
  const int n = n_dist(rng);
  std::vector<VertexId> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);

  const double densities[] = {0.15, 0.25, 0.35, 0.5, 0.65};
  const double q = densities[rng() % 5];
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng) < q) {
        arcs.emplace_back(order[static_cast<std::size_t>(i)],
                          order[static_cast<std::size_t>(j)]);
      }
    }
  }

  std::uniform_int_distribution<int> r_dist(1, opt.max_r);
  std::uniform_int_distribution<int> p_dist(0, opt.max_p);
  std::uniform_int_distribution<int> v_dist(1, n);
  const int r = r_dist(rng);
  std::vector<TerminalPair> pairs;
  for (int i = 0; i < r; ++i) {
    VertexId s = v_dist(rng);
    VertexId t = v_dist(rng);
    if (coin(rng) >= opt.degenerate_pair_chance) {
      while (t == s) t = v_dist(rng);
    }
    pairs.push_back({s, t});
  }
  return DagInstance::build(std::move(order), std::move(arcs), std::move(pairs),
                            p_dist(rng));
}

inline bool separates(const DagInstance& inst, const VertexSet& x, const VertexSet& y,
                      const VertexSet& z) {
  VertexSet reach = reachable(inst, x, z);
  return detail::set_intersection(reach, y).empty();
}

// Candidate vertices a separator may use: everything except terminals, X, Y.
inline VertexSet separator_candidates(const DagInstance& inst, const VertexSet& x,
                                      const VertexSet& y) {
  VertexSet forbidden =
      detail::set_union(inst.terminals(), detail::set_union(x, y));
  return detail::set_difference(inst.vertex_ids(), forbidden);
}

// All X-Y separators of exactly the given size, by subset enumeration.
inline std::vector<VertexSet> separators_of_size(const DagInstance& inst,
                                                 const VertexSet& x,
                                                 const VertexSet& y, int size) {
  VertexSet candidates = separator_candidates(inst, x, y);
  std::vector<VertexSet> out;
  const std::size_t m = candidates.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (__builtin_popcountll(mask) != size) continue;
    VertexSet z;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::uint64_t{1} << i)) z.push_back(candidates[i]);
    }
    if (separates(inst, x, y, z)) out.push_back(std::move(z));
  }
  return out;
}

// Minimum separator size by direct enumeration; nullopt when no separator
// exists at all (per the definition, e.g. a direct X->Y arc).
inline std::optional<int> brute_min_separator_size(const DagInstance& inst,
                                                   const VertexSet& x,
                                                   const VertexSet& y) {
  VertexSet candidates = separator_candidates(inst, x, y);
  if (!separates(inst, x, y, candidates)) return std::nullopt;
  for (int size = 0; size <= static_cast<int>(candidates.size()); ++size) {
    if (!separators_of_size(inst, x, y, size).empty()) return size;
  }
  return std::nullopt;
}

inline bool is_behind(const DagInstance& inst, const VertexSet& x, const VertexSet& z,
                      const VertexSet& z_prime) {
  VertexSet reach_z = reachable(inst, x, z);
  VertexSet reach_zp = reachable(inst, x, z_prime);
  return detail::is_subset(reach_z, reach_zp);
}

// All minimum-size important X-Y separators by full enumeration (the
// uniqueness property says there is exactly one).
inline std::vector<VertexSet> brute_min_important_separators(const DagInstance& inst,
                                                             const VertexSet& x,
                                                             const VertexSet& y) {
  std::optional<int> min_size = brute_min_separator_size(inst, x, y);
  if (!min_size.has_value()) return {};
  std::vector<VertexSet> mins = separators_of_size(inst, x, y, *min_size);
  std::vector<VertexSet> important;
  for (const VertexSet& z : mins) {
    bool dominated = false;
    for (const VertexSet& other : mins) {
      if (other != z && is_behind(inst, x, z, other)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) important.push_back(z);
  }
  return important;
}

// Maximum number of X->Y paths with pairwise disjoint interiors, by
// enumerating all simple paths and searching over compatible subsets.
// Meaningful on instances where terminals cannot appear as interior vertices
// (e.g. normalized ones). Returns INT_MAX for an uncuttable direct arc and
// -1 when the path count is too large to search.
inline int brute_max_disjoint_paths(const DagInstance& inst, const VertexSet& x,
                                    const VertexSet& y) {
  std::vector<std::uint64_t> interiors;
  std::vector<VertexId> current;
  bool direct_arc = false;

  auto interior_mask = [&]() {
    std::uint64_t mask = 0;
    for (std::size_t i = 1; i + 1 < current.size(); ++i) {
      mask |= std::uint64_t{1} << inst.topo_pos(current[i]);
    }
    return mask;
  };

  std::function<void(VertexId)> dfs = [&](VertexId v) {
    if (detail::contains(y, v)) {
      if (current.size() == 2) direct_arc = true;
      interiors.push_back(interior_mask());
      return;  // y vertices end the path
    }
    for (VertexId w : inst.out_neighbors(v)) {
      if (detail::contains(x, w)) continue;
      current.push_back(w);
      dfs(w);
      current.pop_back();
    }
  };
  for (VertexId s : x) {
    current = {s};
    dfs(s);
  }
  if (direct_arc) return std::numeric_limits<int>::max();

  // two paths with identical interiors conflict, so one copy suffices
  detail::sort_unique(interiors);
  if (interiors.size() > 150) return -1;

  int best = 0;
  std::function<void(std::size_t, std::uint64_t, int)> pick =
      [&](std::size_t i, std::uint64_t used, int count) {
        best = std::max(best, count);
        if (i >= interiors.size()) return;
        if (count + static_cast<int>(interiors.size() - i) <= best) return;
        if ((interiors[i] & used) == 0) pick(i + 1, used | interiors[i], count + 1);
        pick(i + 1, used, count);
      };
  pick(0, 0, 0);
  return best;
}

// Exhaustive max-cut value of an undirected graph.
inline int brute_max_cut(const UndirectedGraph& g) {
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    int crossing = 0;
    for (const auto& [u, v] : g.edges) {
      if (((mask >> u) & 1) != ((mask >> v) & 1)) ++crossing;
    }
    best = std::max(best, crossing);
  }
  return best;
}

inline bool has_clique(const UndirectedGraph& g, int t) {
  std::vector<int> pick;
  std::function<bool(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == t) return true;
    for (int v = start; v < g.n; ++v) {
      bool ok = true;
      for (int u : pick) {
        if (!g.has_edge(u, v)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        pick.push_back(v);
        if (rec(v + 1)) return true;
        pick.pop_back();
      }
    }
    return false;
  };
  return rec(0);
}

// All labeled undirected graphs on n vertices.
inline std::vector<UndirectedGraph> all_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  }
  std::vector<UndirectedGraph> out;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (mask & (1u << i)) edges.push_back(slots[i]);
    }
    out.push_back(UndirectedGraph::build(n, std::move(edges)));
  }
  return out;
}

}  // namespace dagmc::testing
