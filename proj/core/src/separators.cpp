#include "dagmc/separators.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "dagmc/detail/sorted_set.hpp"

namespace dagmc {

namespace {

constexpr long long kUnbounded = std::numeric_limits<long long>::max() / 4;

// Unit-capacity flow network over split vertices. Node numbering: for the
// dense vertex index i, in-half = 2i, out-half = 2i+1; super source and sink
// come last.
struct FlowNet {
  struct Edge {
    int to;
    long long cap;
    int rev;  // index of the reverse edge in adj[to]
  };

  explicit FlowNet(int nodes) : adj(static_cast<std::size_t>(nodes)) {}

  void add_edge(int a, int b, long long cap) {
    adj[static_cast<std::size_t>(a)].push_back(
        {b, cap, static_cast<int>(adj[static_cast<std::size_t>(b)].size())});
    adj[static_cast<std::size_t>(b)].push_back(
        {a, 0, static_cast<int>(adj[static_cast<std::size_t>(a)].size()) - 1});
  }

  // One BFS augmentation; returns the bottleneck pushed (0 when the sink is
  // unreachable in the residual graph).
  long long augment(int s, int t) {
    std::vector<int> pre_node(adj.size(), -1), pre_edge(adj.size(), -1);
    pre_node[static_cast<std::size_t>(s)] = s;
    std::deque<int> queue{s};
    while (!queue.empty() && pre_node[static_cast<std::size_t>(t)] < 0) {
      int u = queue.front();
      queue.pop_front();
      const auto& edges = adj[static_cast<std::size_t>(u)];
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge& e = edges[k];
        if (e.cap > 0 && pre_node[static_cast<std::size_t>(e.to)] < 0) {
          pre_node[static_cast<std::size_t>(e.to)] = u;
          pre_edge[static_cast<std::size_t>(e.to)] = static_cast<int>(k);
          queue.push_back(e.to);
        }
      }
    }
    if (pre_node[static_cast<std::size_t>(t)] < 0) return 0;
    long long bottleneck = kUnbounded;
    for (int v = t; v != s; v = pre_node[static_cast<std::size_t>(v)]) {
      int u = pre_node[static_cast<std::size_t>(v)];
      const Edge& e = adj[static_cast<std::size_t>(u)]
                         [static_cast<std::size_t>(pre_edge[static_cast<std::size_t>(v)])];
      bottleneck = std::min(bottleneck, e.cap);
    }
    for (int v = t; v != s; v = pre_node[static_cast<std::size_t>(v)]) {
      int u = pre_node[static_cast<std::size_t>(v)];
      Edge& e = adj[static_cast<std::size_t>(u)]
                   [static_cast<std::size_t>(pre_edge[static_cast<std::size_t>(v)])];
      e.cap -= bottleneck;
      adj[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)].cap += bottleneck;
    }
    return bottleneck;
  }

  std::vector<char> residual_reachable(int s) const {
    std::vector<char> seen(adj.size(), 0);
    seen[static_cast<std::size_t>(s)] = 1;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const Edge& e : adj[static_cast<std::size_t>(u)]) {
        if (e.cap > 0 && !seen[static_cast<std::size_t>(e.to)]) {
          seen[static_cast<std::size_t>(e.to)] = 1;
          stack.push_back(e.to);
        }
      }
    }
    return seen;
  }

  // Nodes that can still reach t in the residual graph.
  std::vector<char> residual_coreachable(int t) const {
    std::vector<char> seen(adj.size(), 0);
    seen[static_cast<std::size_t>(t)] = 1;
    std::vector<int> stack{t};
    // walk residual edges backwards: u reaches v iff some residual edge
    // (u -> v); the reverse entry of a residual edge has positive cap from
    // the v side exactly when cap(u->v) > 0 is not what we want, so scan
    // adjacency of every node once instead.
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const Edge& back : adj[static_cast<std::size_t>(v)]) {
        // edge back: v -> back.to ; its reverse (back.to -> v) has capacity
        // adj[back.to][back.rev].cap
        const Edge& fwd = adj[static_cast<std::size_t>(back.to)]
                             [static_cast<std::size_t>(back.rev)];
        if (fwd.cap > 0 && !seen[static_cast<std::size_t>(back.to)]) {
          seen[static_cast<std::size_t>(back.to)] = 1;
          stack.push_back(back.to);
        }
      }
    }
    return seen;
  }

  std::vector<std::vector<Edge>> adj;
};

}  // namespace

SeparatorReport min_separator(const DagInstance& inst, const VertexSet& x,
                              const VertexSet& y) {
  return min_separator(inst, x, y, inst.budget());
}

SeparatorReport min_separator(const DagInstance& inst, const VertexSet& x,
                              const VertexSet& y, int cap) {
  if (x.empty() || y.empty()) {
    throw Error(ErrorCode::DanglingReference, "min_separator: X and Y must be nonempty");
  }
  if (!detail::set_intersection(x, y).empty()) {
    throw Error(ErrorCode::DanglingReference, "min_separator: X and Y must be disjoint");
  }
  for (VertexId v : x) (void)inst.topo_pos(v);
  for (VertexId v : y) (void)inst.topo_pos(v);

  SeparatorReport report;

  // A direct X->Y arc can never be blocked by a nonterminal.
  for (VertexId u : x) {
    if (!detail::set_intersection(inst.out_neighbors(u), y).empty()) {
      report.size = SepSize::infinite();
      return report;
    }
  }

  const int n = static_cast<int>(inst.vertex_count());
  auto idx = [&](VertexId v) { return inst.topo_pos(v); };
  auto in_node = [&](VertexId v) { return 2 * idx(v); };
  auto out_node = [&](VertexId v) { return 2 * idx(v) + 1; };
  const int s_node = 2 * n, t_node = 2 * n + 1;

  FlowNet net(2 * n + 2);
  for (VertexId v : inst.vertex_ids()) {
    const bool undeletable = inst.is_terminal(v) || detail::contains(x, v) ||
                             detail::contains(y, v);
    net.add_edge(in_node(v), out_node(v), undeletable ? kUnbounded : 1);
  }
  for (const Arc& a : inst.arcs()) {
    net.add_edge(out_node(a.first), in_node(a.second), kUnbounded);
  }
  for (VertexId v : x) net.add_edge(s_node, out_node(v), kUnbounded);
  for (VertexId v : y) net.add_edge(in_node(v), t_node, kUnbounded);

  long long flow = 0;
  while (flow <= cap) {
    long long pushed = net.augment(s_node, t_node);
    if (pushed == 0) break;
    flow += pushed;
  }
  if (flow > cap) {
    report.size = SepSize::infinite();
    return report;
  }

  report.size = SepSize::finite(static_cast<int>(flow));

  std::vector<char> from_s = net.residual_reachable(s_node);
  std::vector<char> to_t = net.residual_coreachable(t_node);
  for (VertexId v : inst.vertex_ids()) {
    const std::size_t vin = static_cast<std::size_t>(in_node(v));
    const std::size_t vout = static_cast<std::size_t>(out_node(v));
    if (from_s[vin] && !from_s[vout]) report.closest_to_x.push_back(v);
    if (to_t[vout] && !to_t[vin]) report.closest_to_y.push_back(v);
  }
  return report;
}

bool is_important_separator(const DagInstance& inst, const VertexSet& x,
                            const VertexSet& y, const VertexSet& z) {
  auto separates = [&](const VertexSet& cand) {
    VertexSet reach = reachable(inst, x, cand);
    return detail::set_intersection(reach, y).empty();
  };
  for (VertexId v : z) {
    if (inst.is_terminal(v) || detail::contains(x, v) || detail::contains(y, v)) {
      throw Error(ErrorCode::NotASeparator,
                  "separator may not contain terminals or X/Y vertices");
    }
  }
  if (!separates(z)) {
    throw Error(ErrorCode::NotASeparator, "Z does not separate X from Y");
  }

  // minimality: no proper subset separates
  for (std::size_t skip = 0; skip < z.size(); ++skip) {
    VertexSet sub;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (i != skip) sub.push_back(z[i]);
    }
    if (separates(sub)) return false;
  }

  VertexSet forbidden = detail::set_union(inst.terminals(), detail::set_union(x, y));
  VertexSet candidates = detail::set_difference(inst.vertex_ids(), forbidden);
  const std::size_t m = candidates.size();
  if (m > 24) {
    throw Error(ErrorCode::TooLarge,
                "is_important_separator: too many candidate vertices for enumeration");
  }
  const VertexSet base_reach = reachable(inst, x, z);

  // Enumerate all candidate separators up to |Z| and look for one behind Z.
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > z.size()) continue;
    VertexSet cand;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) cand.push_back(candidates[i]);
    }
    if (cand == z || !separates(cand)) continue;
    VertexSet cand_reach = reachable(inst, x, cand);
    if (detail::is_subset(base_reach, cand_reach)) return false;  // behind Z
  }
  return true;
}

std::optional<int> potential(const DagInstance& inst) {
  const int p = inst.budget();
  const int r = inst.pair_count();
  long long sum = 0;
  for (const TerminalPair& pair : inst.terminal_pairs()) {
    if (pair.source == pair.sink) return std::nullopt;
    SeparatorReport rep = min_separator(inst, {pair.source}, {pair.sink}, p);
    if (rep.size.is_infinite()) return std::nullopt;
    sum += rep.size.value();
  }
  return static_cast<int>(static_cast<long long>(r + 1) * p - sum);
}

}  // namespace dagmc
