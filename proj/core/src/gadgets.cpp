#include "dagmc/gadgets.hpp"

#include <algorithm>
#include <map>

#include "dagmc/detail/sorted_set.hpp"

namespace dagmc {

UndirectedGraph UndirectedGraph::build(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) {
    throw Error(ErrorCode::DanglingReference, "negative vertex count");
  }
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw Error(ErrorCode::DanglingReference, "edge endpoint out of range");
    }
    if (u == v) {
      throw Error(ErrorCode::DanglingReference, "loops are not allowed");
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error(ErrorCode::DanglingReference, "duplicate edge");
  }
  return UndirectedGraph{n, std::move(edges)};
}

bool UndirectedGraph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

WeightedArcInstance gen_clique_instance(const UndirectedGraph& g, int t) {
  if (t < 2) {
    throw Error(ErrorCode::DanglingReference, "clique size must be at least 2");
  }
  if (g.n < 1) {
    throw Error(ErrorCode::DanglingReference, "graph must have at least one vertex");
  }
  const int n = g.n;
  const int heavy = 2 * (t + 1) * (t + 1);
  const int budget = 2 * t * (t - 1) * heavy + t * (t + 1) / 2;
  const int chain_len = n * n;  // positions 0..n^2 per row
  auto iota_pair = [n](int x, int y) { return x * n + y; };

  // Ids are assigned in a topological order: all gadgets (row 1 then row 2),
  // then the a/b consistency pairs, then the c/d pairs.
  VertexId next_id = 1;
  std::map<std::tuple<int, int, int, int>, VertexId> w_id;  // (i,j,s,row)
  for (int i = 1; i <= t; ++i) {
    for (int j = 1; j <= t; ++j) {
      if (i == j) continue;
      for (int row = 1; row <= 2; ++row) {
        for (int s = 0; s <= chain_len; ++s) {
          w_id[{i, j, s, row}] = next_id++;
        }
      }
    }
  }
  std::map<std::tuple<int, int, int, int>, VertexId> a_id, b_id;  // (i,j,x,y)
  for (int i = 1; i <= t; ++i) {
    for (int j = i + 1; j <= t; ++j) {
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          if (!g.has_edge(x, y)) continue;
          a_id[{i, j, x, y}] = next_id++;
          b_id[{i, j, x, y}] = next_id++;
        }
      }
    }
  }
  std::map<std::pair<int, int>, VertexId> c_id, d_id;  // (i,x)
  for (int i = 1; i <= t; ++i) {
    for (int x = 0; x < n; ++x) {
      c_id[{i, x}] = next_id++;
      d_id[{i, x}] = next_id++;
    }
  }

  std::vector<WeightedArc> arcs;
  std::vector<TerminalPair> pairs;
  const ArcWeight inf = ArcWeight::infinite();
  const ArcWeight heavy_w = ArcWeight::finite(heavy);
  const ArcWeight light = ArcWeight::finite(1);

  for (int i = 1; i <= t; ++i) {
    for (int j = 1; j <= t; ++j) {
      if (i == j) continue;
      for (int row = 1; row <= 2; ++row) {
        for (int s = 0; s < chain_len; ++s) {
          const int x = s / n, y = s % n;
          const bool deletable = x != y && g.has_edge(x, y);
          arcs.push_back({w_id[{i, j, s, row}], w_id[{i, j, s + 1, row}],
                          deletable ? heavy_w : inf});
        }
      }
      arcs.push_back({w_id[{i, j, chain_len, 1}], w_id[{i, j, 0, 2}], inf});
      for (int s = 0; s <= chain_len; ++s) {
        arcs.push_back({w_id[{i, j, s, 1}], w_id[{i, j, s, 2}], inf});
      }
      pairs.push_back({w_id[{i, j, 0, 1}], w_id[{i, j, chain_len, 2}]});
    }
  }

  // first property: gadgets (i,j) and (j,i) represent mirrored pairs
  for (int i = 1; i <= t; ++i) {
    for (int j = i + 1; j <= t; ++j) {
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          if (!g.has_edge(x, y)) continue;
          const VertexId a = a_id[{i, j, x, y}], b = b_id[{i, j, x, y}];
          arcs.push_back({a, b, light});
          arcs.push_back({w_id[{i, j, iota_pair(x, y), 2}], a, inf});
          arcs.push_back({w_id[{j, i, iota_pair(y, x), 2}], a, inf});
          pairs.push_back({w_id[{i, j, iota_pair(x, y) + 1, 1}], b});
          pairs.push_back({w_id[{j, i, iota_pair(y, x) + 1, 1}], b});
        }
      }
    }
  }

  // second property: gadgets (i,*) agree on the first coordinate
  for (int i = 1; i <= t; ++i) {
    for (int x = 0; x < n; ++x) {
      const VertexId c = c_id[{i, x}], d = d_id[{i, x}];
      arcs.push_back({c, d, light});
      for (int j = 1; j <= t; ++j) {
        if (j == i) continue;
        arcs.push_back({w_id[{i, j, iota_pair(x, 0), 2}], c, inf});
        pairs.push_back({w_id[{i, j, iota_pair(x + 1, 0), 1}], d});
      }
    }
  }

  VertexSet vertices;
  vertices.reserve(static_cast<std::size_t>(next_id) - 1);
  for (VertexId v = 1; v < next_id; ++v) vertices.push_back(v);
  return WeightedArcInstance::build(std::move(vertices), std::move(arcs),
                                    std::move(pairs), budget);
}

WeightedArcInstance gen_maxcut_skew_instance(const UndirectedGraph& g, int t) {
  if (t < 0) {
    throw Error(ErrorCode::DanglingReference, "cut target must be nonnegative");
  }
  const int n = g.n;
  const int m = static_cast<int>(g.edges.size());
  const int heavy = 2 * m + 1;
  const int budget = n * heavy + 2 * m - t;
  if (budget < 0) {
    throw Error(ErrorCode::DanglingReference, "cut target larger than any cut");
  }

  // ids in the construction's topological order:
  // s1, s2, a^v..., b's, c's, d^v..., t1, t2
  const VertexId s1 = 1, s2 = 2;
  auto a_id = [&](int v) { return 3 + v; };
  auto b_id = [&](int e, int alpha) { return 3 + n + 2 * e + (alpha - 1); };
  auto c_id = [&](int e, int alpha) { return 3 + n + 2 * m + 2 * e + (alpha - 1); };
  auto d_id = [&](int v) { return 3 + n + 4 * m + v; };
  const VertexId t1 = 3 + 2 * n + 4 * m, t2 = t1 + 1;

  const ArcWeight inf = ArcWeight::infinite();
  const ArcWeight heavy_w = ArcWeight::finite(heavy);
  const ArcWeight light = ArcWeight::finite(1);

  std::vector<WeightedArc> arcs;
  for (int v = 0; v < n; ++v) {
    arcs.push_back({s1, a_id(v), heavy_w});
    arcs.push_back({a_id(v), d_id(v), inf});
    arcs.push_back({d_id(v), t2, heavy_w});
  }
  for (int e = 0; e < m; ++e) {
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    arcs.push_back({b_id(e, 1), c_id(e, 1), light});
    arcs.push_back({b_id(e, 2), c_id(e, 2), light});
    for (int alpha = 1; alpha <= 2; ++alpha) {
      arcs.push_back({s2, b_id(e, alpha), inf});
      arcs.push_back({c_id(e, alpha), t1, inf});
    }
    arcs.push_back({a_id(u), b_id(e, 1), inf});
    arcs.push_back({a_id(v), b_id(e, 2), inf});
    arcs.push_back({c_id(e, 2), d_id(u), inf});
    arcs.push_back({c_id(e, 1), d_id(v), inf});
  }

  std::vector<TerminalPair> pairs = {{s1, t1}, {s1, t2}, {s2, t2}};
  VertexSet vertices;
  for (VertexId v = 1; v <= t2; ++v) vertices.push_back(v);
  return WeightedArcInstance::build(std::move(vertices), std::move(arcs),
                                    std::move(pairs), budget);
}

WeightedArcInstance skew_to_two_pairs(const WeightedArcInstance& inst) {
  if (inst.pairs.size() != 3) {
    throw Error(ErrorCode::NotSkewShaped, "expected exactly three terminal pairs");
  }
  // pattern {(s1,t1),(s1,t2),(s2,t2)}: s1 and t2 appear twice
  std::map<VertexId, int> src_count, sink_count;
  for (const TerminalPair& p : inst.pairs) {
    src_count[p.source]++;
    sink_count[p.sink]++;
  }
  if (src_count.size() != 2 || sink_count.size() != 2) {
    throw Error(ErrorCode::NotSkewShaped, "expected two sources and two sinks");
  }
  VertexId s1 = 0, s2 = 0, t1 = 0, t2 = 0;
  for (const auto& [v, c] : src_count) (c == 2 ? s1 : s2) = v;
  for (const auto& [v, c] : sink_count) (c == 2 ? t2 : t1) = v;
  VertexSet terminals{s1, s2, t1, t2};
  detail::sort_unique(terminals);
  if (terminals.size() != 4) {
    throw Error(ErrorCode::NotSkewShaped, "terminals are not pairwise distinct");
  }
  auto has_pair = [&](VertexId s, VertexId t) {
    return std::any_of(inst.pairs.begin(), inst.pairs.end(), [&](const TerminalPair& p) {
      return p.source == s && p.sink == t;
    });
  };
  if (!has_pair(s1, t1) || !has_pair(s1, t2) || !has_pair(s2, t2)) {
    throw Error(ErrorCode::NotSkewShaped, "terminal pairs do not form a skew pattern");
  }
  for (const WeightedArc& a : inst.arcs) {
    if (a.to == s1 || a.to == s2 || a.from == t1 || a.from == t2) {
      throw Error(ErrorCode::NotSkewShaped,
                  "sources must have in-degree 0 and sinks out-degree 0");
    }
  }

  std::vector<WeightedArc> arcs = inst.arcs;
  arcs.push_back({t2, t1, ArcWeight::infinite()});
  return WeightedArcInstance::build(inst.vertices, std::move(arcs),
                                    {{s1, t1}, {s2, t2}}, inst.budget);
}

DagInstance expand_to_vertex_instance(const WeightedArcInstance& inst) {
  const int p = inst.budget;
  VertexSet terminals;
  for (const TerminalPair& pr : inst.pairs) {
    detail::insert_unique(terminals, pr.source);
    detail::insert_unique(terminals, pr.sink);
  }

  std::uint64_t vertex_estimate = terminals.size();
  for (VertexId v : inst.vertices) {
    if (!detail::contains(terminals, v)) {
      vertex_estimate += static_cast<std::uint64_t>(p) + 1;
    }
  }
  for (const WeightedArc& a : inst.arcs) {
    vertex_estimate += a.weight.is_infinite()
                           ? static_cast<std::uint64_t>(p) + 1
                           : static_cast<std::uint64_t>(a.weight.value());
  }
  if (vertex_estimate > 200000) {
    throw Error(ErrorCode::ExpansionTooLarge,
                "expanded instance would have " + std::to_string(vertex_estimate) +
                    " vertices");
  }

  // terminals keep their ids; every other vertex becomes p+1 copies, then
  // each arc becomes its middle vertices, all minted above the old maximum
  VertexId next_id = inst.vertices.empty() ? 1 : inst.vertices.back() + 1;
  std::map<VertexId, VertexSet> reps;
  for (VertexId v : inst.vertices) {
    if (detail::contains(terminals, v)) {
      reps[v] = {v};
    } else {
      VertexSet copies;
      for (int k = 0; k <= p; ++k) copies.push_back(next_id++);
      reps[v] = std::move(copies);
    }
  }

  VertexSet vertices;
  for (const auto& [old_id, rep] : reps) {
    (void)old_id;
    for (VertexId v : rep) vertices.push_back(v);
  }
  std::vector<Arc> arcs;
  std::uint64_t arc_estimate = 0;
  for (const WeightedArc& a : inst.arcs) {
    const int width = a.weight.is_infinite() ? p + 1 : a.weight.value();
    arc_estimate += static_cast<std::uint64_t>(width) *
                    (reps[a.from].size() + reps[a.to].size());
    if (arc_estimate > 4000000) {
      throw Error(ErrorCode::ExpansionTooLarge, "expanded instance has too many arcs");
    }
    for (int k = 0; k < width; ++k) {
      const VertexId middle = next_id++;
      vertices.push_back(middle);
      for (VertexId u : reps[a.from]) arcs.emplace_back(u, middle);
      for (VertexId v : reps[a.to]) arcs.emplace_back(middle, v);
    }
  }
  return DagInstance::build(std::move(vertices), std::move(arcs), inst.pairs, p);
}

}  // namespace dagmc
