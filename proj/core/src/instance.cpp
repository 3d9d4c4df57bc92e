#include "dagmc/instance.hpp"

#include <algorithm>
#include <queue>

#include "dagmc/detail/sorted_set.hpp"

namespace dagmc {

namespace {

std::string id_str(VertexId v) { return std::to_string(v); }

}  // namespace

DagInstance DagInstance::build(VertexSet vertices, std::vector<Arc> arcs,
                               std::vector<TerminalPair> pairs, int budget) {
  detail::sort_unique(vertices);
  if (!vertices.empty() && vertices.front() <= 0) {
    throw Error(ErrorCode::DanglingReference, "vertex ids must be positive");
  }
  if (budget < 0) {
    throw Error(ErrorCode::DanglingReference, "budget must be nonnegative");
  }
  for (const Arc& a : arcs) {
    if (!detail::contains(vertices, a.first) || !detail::contains(vertices, a.second)) {
      throw Error(ErrorCode::DanglingReference,
                  "arc (" + id_str(a.first) + "," + id_str(a.second) +
                      ") references an undeclared vertex");
    }
    if (a.first == a.second) {
      throw Error(ErrorCode::CycleDetected, "self-loop at vertex " + id_str(a.first));
    }
  }
  for (const TerminalPair& p : pairs) {
    if (!detail::contains(vertices, p.source) || !detail::contains(vertices, p.sink)) {
      throw Error(ErrorCode::DanglingReference,
                  "terminal pair (" + id_str(p.source) + "," + id_str(p.sink) +
                      ") references an undeclared vertex");
    }
  }
  detail::sort_unique(arcs);  // collapse duplicate arcs, keep one copy

  DagInstance inst;
  inst.vertices_ = std::move(vertices);
  inst.arcs_ = std::move(arcs);
  inst.pairs_ = std::move(pairs);
  inst.budget_ = budget;

  // Kahn's algorithm, popping the smallest available id.
  const std::size_t n = inst.vertices_.size();
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out_idx(n);
  auto index_of = [&](VertexId v) {
    return static_cast<int>(std::lower_bound(inst.vertices_.begin(), inst.vertices_.end(), v) -
                            inst.vertices_.begin());
  };
  for (const Arc& a : inst.arcs_) {
    int ui = index_of(a.first), vi = index_of(a.second);
    out_idx[ui].push_back(vi);
    indeg[vi]++;
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.push(static_cast<int>(i));
  }
  inst.topo_.reserve(n);
  while (!ready.empty()) {
    int i = ready.top();
    ready.pop();
    inst.topo_.push_back(inst.vertices_[i]);
    for (int j : out_idx[i]) {
      if (--indeg[j] == 0) ready.push(j);
    }
  }
  if (inst.topo_.size() != n) {
    throw Error(ErrorCode::CycleDetected, "arc set contains a directed cycle");
  }

  inst.finalize();
  return inst;
}

DagInstance DagInstance::derive(VertexSet vertices, std::vector<Arc> arcs,
                                int budget) const {
  detail::sort_unique(vertices);
  detail::sort_unique(arcs);
  if (budget < 0) {
    throw Error(ErrorCode::InternalError, "derive: negative budget");
  }
  DagInstance inst;
  inst.vertices_ = std::move(vertices);
  inst.arcs_ = std::move(arcs);
  inst.pairs_ = pairs_;
  inst.budget_ = budget;

  for (const TerminalPair& p : inst.pairs_) {
    if (!detail::contains(inst.vertices_, p.source) ||
        !detail::contains(inst.vertices_, p.sink)) {
      throw Error(ErrorCode::InternalError, "derive: terminal vertex removed");
    }
  }
  for (const VertexId v : inst.vertices_) {
    if (!has_vertex(v)) {
      throw Error(ErrorCode::InternalError,
                  "derive: vertex " + id_str(v) + " not in parent instance");
    }
  }

  // Induced topological order: parent order restricted to the survivors.
  inst.topo_.reserve(inst.vertices_.size());
  for (const VertexId v : topo_) {
    if (detail::contains(inst.vertices_, v)) inst.topo_.push_back(v);
  }

  inst.finalize();

  // Every arc (including freshly added ones) must go forward in the
  // inherited order; this is what keeps the instances acyclic without
  // recomputing an order.
  for (const Arc& a : inst.arcs_) {
    if (!detail::contains(inst.vertices_, a.first) ||
        !detail::contains(inst.vertices_, a.second)) {
      throw Error(ErrorCode::InternalError, "derive: dangling arc");
    }
    if (inst.topo_pos(a.first) >= inst.topo_pos(a.second)) {
      throw Error(ErrorCode::InternalError,
                  "derive: arc (" + id_str(a.first) + "," + id_str(a.second) +
                      ") violates the inherited topological order");
    }
  }
  return inst;
}

void DagInstance::finalize() {
  max_id_ = vertices_.empty() ? 0 : vertices_.back();
  index_of_id_.assign(static_cast<std::size_t>(max_id_) + 1, -1);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    index_of_id_[static_cast<std::size_t>(vertices_[i])] = static_cast<int>(i);
  }

  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  for (const Arc& a : arcs_) {
    out_[static_cast<std::size_t>(require_index(a.first))].push_back(a.second);
    in_[static_cast<std::size_t>(require_index(a.second))].push_back(a.first);
  }
  for (auto& nb : out_) detail::sort_unique(nb);
  for (auto& nb : in_) detail::sort_unique(nb);

  sources_.clear();
  sinks_.clear();
  degenerate_pair_ = false;
  for (const TerminalPair& p : pairs_) {
    detail::insert_unique(sources_, p.source);
    detail::insert_unique(sinks_, p.sink);
    if (p.source == p.sink) degenerate_pair_ = true;
  }
  terminals_ = detail::set_union(sources_, sinks_);

  topo_pos_.assign(vertices_.size(), 0);
  for (std::size_t rank = 0; rank < topo_.size(); ++rank) {
    topo_pos_[static_cast<std::size_t>(require_index(topo_[rank]))] =
        static_cast<int>(rank);
  }
}

int DagInstance::require_index(VertexId v) const {
  if (v <= 0 || v > max_id_ || index_of_id_[static_cast<std::size_t>(v)] < 0) {
    throw Error(ErrorCode::DanglingReference,
                "vertex " + id_str(v) + " is not part of this instance");
  }
  return index_of_id_[static_cast<std::size_t>(v)];
}

VertexSet DagInstance::nonterminals() const {
  return detail::set_difference(vertices_, terminals_);
}

bool DagInstance::has_vertex(VertexId v) const {
  return v > 0 && v <= max_id_ && index_of_id_[static_cast<std::size_t>(v)] >= 0;
}

bool DagInstance::has_arc(VertexId u, VertexId v) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), Arc{u, v});
}

bool DagInstance::is_terminal(VertexId v) const {
  return detail::contains(terminals_, v);
}

int DagInstance::topo_pos(VertexId v) const {
  return topo_pos_[static_cast<std::size_t>(require_index(v))];
}

const VertexSet& DagInstance::out_neighbors(VertexId v) const {
  return out_[static_cast<std::size_t>(require_index(v))];
}

const VertexSet& DagInstance::in_neighbors(VertexId v) const {
  return in_[static_cast<std::size_t>(require_index(v))];
}

VertexSet reachable(const DagInstance& inst, const VertexSet& from,
                    const VertexSet& deleted) {
  std::vector<char> seen(inst.vertex_count(), 0);
  std::vector<char> gone(inst.vertex_count(), 0);
  auto idx = [&](VertexId v) { return static_cast<std::size_t>(inst.topo_pos(v)); };
  // topo rank is a convenient dense key: it is a bijection onto 0..n-1
  for (VertexId v : deleted) {
    if (inst.has_vertex(v)) gone[idx(v)] = 1;
  }
  std::vector<VertexId> stack;
  for (VertexId v : from) {
    if (!inst.has_vertex(v)) {
      throw Error(ErrorCode::DanglingReference,
                  "reachable: start vertex not in instance");
    }
    if (!gone[idx(v)] && !seen[idx(v)]) {
      seen[idx(v)] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : inst.out_neighbors(v)) {
      if (!gone[idx(w)] && !seen[idx(w)]) {
        seen[idx(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  VertexSet out;
  for (VertexId v : inst.vertex_ids()) {
    if (seen[idx(v)]) out.push_back(v);
  }
  return out;
}

SrcMap::SrcMap(VertexSet source_universe, std::vector<VertexId> ids,
               std::vector<std::uint64_t> masks)
    : universe_(std::move(source_universe)),
      ids_(std::move(ids)),
      masks_(std::move(masks)) {}

std::uint64_t SrcMap::mask_of(VertexId v) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) {
    throw Error(ErrorCode::DanglingReference, "SrcMap: unknown vertex");
  }
  return masks_[static_cast<std::size_t>(it - ids_.begin())];
}

VertexSet SrcMap::sources_of(VertexId v) const {
  std::uint64_t mask = mask_of(v);
  VertexSet out;
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    if (mask & (std::uint64_t{1} << i)) out.push_back(universe_[i]);
  }
  return out;
}

std::uint64_t SrcMap::mask_for(const VertexSet& subset) const {
  std::uint64_t mask = 0;
  for (VertexId s : subset) {
    auto it = std::lower_bound(universe_.begin(), universe_.end(), s);
    if (it == universe_.end() || *it != s) {
      throw Error(ErrorCode::DanglingReference,
                  "SrcMap: vertex is not a source terminal");
    }
    mask |= std::uint64_t{1} << (it - universe_.begin());
  }
  return mask;
}

SrcMap src_map(const DagInstance& inst) {
  const VertexSet& sources = inst.sources();
  if (sources.size() > 63) {
    throw Error(ErrorCode::TooLarge, "src_map supports at most 63 distinct sources");
  }
  std::vector<std::uint64_t> masks(inst.vertex_count(), 0);
  auto idx = [&](VertexId v) { return static_cast<std::size_t>(inst.topo_pos(v)); };
  for (std::size_t i = 0; i < sources.size(); ++i) {
    VertexSet reach = reachable(inst, {sources[i]}, {});
    for (VertexId v : reach) masks[idx(v)] |= std::uint64_t{1} << i;
  }
  std::vector<std::uint64_t> by_id(inst.vertex_count());
  const VertexSet& ids = inst.vertex_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) by_id[i] = masks[idx(ids[i])];
  return SrcMap(sources, ids, std::move(by_id));
}

VertexSet vertices_with_src(const DagInstance& inst, const VertexSet& with) {
  return vertices_with_src(inst, src_map(inst), with);
}

VertexSet vertices_with_src(const DagInstance& inst, const SrcMap& map,
                            const VertexSet& with) {
  const std::uint64_t want = map.mask_for(with);
  VertexSet out;
  for (VertexId v : inst.vertex_ids()) {
    if (!inst.is_terminal(v) && map.mask_of(v) == want) out.push_back(v);
  }
  return out;
}

LexOrder lex_compare(const DagInstance& inst, const VertexSet& a,
                     const VertexSet& b) {
  std::vector<int> ra, rb;
  ra.reserve(a.size());
  rb.reserve(b.size());
  for (VertexId v : a) ra.push_back(inst.topo_pos(v));
  for (VertexId v : b) rb.push_back(inst.topo_pos(v));
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  if (ra == rb) return LexOrder::Equal;
  return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end())
             ? LexOrder::Less
             : LexOrder::Greater;
}

bool is_multicut(const DagInstance& inst, const VertexSet& cut) {
  for (VertexId v : cut) {
    if (!inst.has_vertex(v)) return false;
    if (inst.is_terminal(v)) return false;  // ContainsTerminal
  }
  for (const TerminalPair& p : inst.terminal_pairs()) {
    VertexSet reach = reachable(inst, {p.source}, cut);
    if (detail::contains(reach, p.sink)) return false;
  }
  return true;
}

}  // namespace dagmc
