#include "dagmc/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include "dagmc/detail/sorted_set.hpp"

namespace dagmc {

namespace {

constexpr std::uint64_t kCandidateGuard = 10'000'000;

std::uint64_t count_candidates(std::size_t n, int max_size) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, 0)
  for (int k = 0; k <= max_size; ++k) {
    total += binom;
    if (total > kCandidateGuard) return total;
    binom = binom * (n - static_cast<std::size_t>(k)) / static_cast<std::uint64_t>(k + 1);
  }
  return total;
}

}  // namespace

std::optional<VertexSet> brute_solve(const DagInstance& inst) {
  if (inst.has_degenerate_pair()) return std::nullopt;

  // candidates in topological order, so index-lexicographic enumeration of
  // combinations coincides with lex_compare on equal-size sets
  std::vector<VertexId> candidates;
  for (VertexId v : inst.topo_order()) {
    if (!inst.is_terminal(v)) candidates.push_back(v);
  }
  const int n = static_cast<int>(candidates.size());
  const int p = std::min(inst.budget(), n);
  if (count_candidates(candidates.size(), p) > kCandidateGuard) {
    throw Error(ErrorCode::TooLarge, "brute_solve: candidate space too large");
  }

  std::vector<int> pick;
  VertexSet cut;
  for (int size = 0; size <= p; ++size) {
    pick.assign(static_cast<std::size_t>(size), 0);
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
      cut.clear();
      for (int i : pick) cut.push_back(candidates[static_cast<std::size_t>(i)]);
      std::sort(cut.begin(), cut.end());
      if (is_multicut(inst, cut)) return cut;
      // next combination in index-lexicographic order
      int j = size - 1;
      while (j >= 0 && pick[static_cast<std::size_t>(j)] == n - size + j) --j;
      if (j < 0) break;
      ++pick[static_cast<std::size_t>(j)];
      for (int i = j + 1; i < size; ++i) {
        pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
      }
    }
  }
  return std::nullopt;
}

ArcWeight ArcWeight::finite(int value) {
  if (value <= 0) {
    throw Error(ErrorCode::DanglingReference, "arc weights must be positive");
  }
  return ArcWeight(value);
}

WeightedArcInstance WeightedArcInstance::build(VertexSet vertices,
                                               std::vector<WeightedArc> arcs,
                                               std::vector<TerminalPair> pairs,
                                               int budget) {
  detail::sort_unique(vertices);
  if (budget < 0) {
    throw Error(ErrorCode::DanglingReference, "budget must be nonnegative");
  }
  std::vector<Arc> plain;
  plain.reserve(arcs.size());
  for (const WeightedArc& a : arcs) plain.emplace_back(a.from, a.to);
  detail::sort_unique(plain);
  if (plain.size() != arcs.size()) {
    throw Error(ErrorCode::DanglingReference, "duplicate weighted arc");
  }
  // reuse the DAG validation (references, self-loops, cycles)
  (void)DagInstance::build(vertices, plain, pairs, budget);

  std::sort(arcs.begin(), arcs.end(), [](const WeightedArc& a, const WeightedArc& b) {
    return std::make_pair(a.from, a.to) < std::make_pair(b.from, b.to);
  });
  WeightedArcInstance inst;
  inst.vertices = std::move(vertices);
  inst.arcs = std::move(arcs);
  inst.pairs = std::move(pairs);
  inst.budget = budget;
  return inst;
}

namespace {

struct WeightedSearch {
  const WeightedArcInstance& inst;
  std::vector<std::vector<int>> out_by_vertex;  // arc indices
  std::vector<int> vertex_index;                // id -> dense
  std::vector<char> deleted, forbidden;
  std::uint64_t nodes = 0;

  explicit WeightedSearch(const WeightedArcInstance& w) : inst(w) {
    VertexId max_id = w.vertices.empty() ? 0 : w.vertices.back();
    vertex_index.assign(static_cast<std::size_t>(max_id) + 1, -1);
    for (std::size_t i = 0; i < w.vertices.size(); ++i) {
      vertex_index[static_cast<std::size_t>(w.vertices[i])] = static_cast<int>(i);
    }
    out_by_vertex.assign(w.vertices.size(), {});
    for (std::size_t k = 0; k < w.arcs.size(); ++k) {
      out_by_vertex[static_cast<std::size_t>(idx(w.arcs[k].from))].push_back(
          static_cast<int>(k));
    }
    deleted.assign(w.arcs.size(), 0);
    forbidden.assign(w.arcs.size(), 0);
  }

  int idx(VertexId v) const { return vertex_index[static_cast<std::size_t>(v)]; }

  // Arc indices of a surviving source->sink path for the first still-connected
  // pair; empty when every pair is separated.
  std::vector<int> violated_path() const {
    for (const TerminalPair& p : inst.pairs) {
      std::vector<int> pred(inst.vertices.size(), -2);  // -2 unseen, -1 root
      pred[static_cast<std::size_t>(idx(p.source))] = -1;
      std::vector<VertexId> queue{p.source};
      std::size_t head = 0;
      bool found = p.source == p.sink;
      while (head < queue.size() && !found) {
        VertexId u = queue[head++];
        for (int k : out_by_vertex[static_cast<std::size_t>(idx(u))]) {
          if (deleted[static_cast<std::size_t>(k)]) continue;
          VertexId w = inst.arcs[static_cast<std::size_t>(k)].to;
          if (pred[static_cast<std::size_t>(idx(w))] != -2) continue;
          pred[static_cast<std::size_t>(idx(w))] = k;
          if (w == p.sink) {
            found = true;
            break;
          }
          queue.push_back(w);
        }
      }
      if (!found) continue;
      std::vector<int> path;
      VertexId v = p.sink;
      while (v != p.source) {
        int k = pred[static_cast<std::size_t>(idx(v))];
        path.push_back(k);
        v = inst.arcs[static_cast<std::size_t>(k)].from;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    return {};
  }

  bool search(int budget_left) {
    if (++nodes > kCandidateGuard) {
      throw Error(ErrorCode::TooLarge, "brute_solve_weighted_arcs: search space too large");
    }
    std::vector<int> path = violated_path();
    if (path.empty()) return true;
    // Every solution must hit this path on a finite arc. Branch on which arc
    // is the first one chosen; forbidding earlier arcs in later branches
    // keeps the subsets disjoint.
    std::vector<int> opened;
    bool ok = false;
    for (int k : path) {
      const WeightedArc& arc = inst.arcs[static_cast<std::size_t>(k)];
      if (arc.weight.is_infinite() || forbidden[static_cast<std::size_t>(k)]) continue;
      if (arc.weight.value() <= budget_left) {
        deleted[static_cast<std::size_t>(k)] = 1;
        ok = search(budget_left - arc.weight.value());
        deleted[static_cast<std::size_t>(k)] = 0;
        if (ok) break;
      }
      forbidden[static_cast<std::size_t>(k)] = 1;
      opened.push_back(k);
    }
    for (int k : opened) forbidden[static_cast<std::size_t>(k)] = 0;
    return ok;
  }
};

}  // namespace

bool brute_solve_weighted_arcs(const WeightedArcInstance& inst) {
  for (const TerminalPair& p : inst.pairs) {
    if (p.source == p.sink) return false;  // never separable
  }
  WeightedSearch search(inst);
  return search.search(inst.budget);
}

}  // namespace dagmc
