#include "dagmc/transforms.hpp"

#include <algorithm>
#include <map>

#include "dagmc/detail/sorted_set.hpp"

namespace dagmc {

bool is_normalized(const DagInstance& inst) {
  VertexSet seen;
  for (const TerminalPair& p : inst.terminal_pairs()) {
    if (p.source == p.sink) return false;
    if (detail::contains(seen, p.source) || detail::contains(seen, p.sink)) return false;
    detail::insert_unique(seen, p.source);
    detail::insert_unique(seen, p.sink);
  }
  for (const TerminalPair& p : inst.terminal_pairs()) {
    if (!inst.in_neighbors(p.source).empty()) return false;
    if (!inst.out_neighbors(p.sink).empty()) return false;
  }
  return true;
}

DagInstance normalize(const DagInstance& inst) {
  const int p = inst.budget();
  VertexId next_id = inst.max_vertex_id() + 1;

  // Each terminal vertex becomes p+1 interchangeable nonterminal copies; a
  // solution of size <= p can never block all of them.
  std::map<VertexId, VertexSet> reps;
  for (VertexId v : inst.vertex_ids()) {
    if (inst.is_terminal(v)) {
      VertexSet copies;
      for (int k = 0; k <= p; ++k) copies.push_back(next_id++);
      reps[v] = std::move(copies);
    } else {
      reps[v] = {v};
    }
  }

  std::vector<TerminalPair> fresh_pairs;
  fresh_pairs.reserve(inst.terminal_pairs().size());
  for (std::size_t i = 0; i < inst.terminal_pairs().size(); ++i) {
    VertexId s = next_id++;
    VertexId t = next_id++;
    fresh_pairs.push_back({s, t});
  }

  VertexSet vertices;
  for (const auto& [old_id, rep] : reps) {
    (void)old_id;
    for (VertexId v : rep) vertices.push_back(v);
  }
  for (const TerminalPair& fp : fresh_pairs) {
    vertices.push_back(fp.source);
    vertices.push_back(fp.sink);
  }

  std::vector<Arc> arcs;
  for (const Arc& a : inst.arcs()) {
    for (VertexId u : reps[a.first]) {
      for (VertexId v : reps[a.second]) arcs.emplace_back(u, v);
    }
  }
  for (std::size_t i = 0; i < inst.terminal_pairs().size(); ++i) {
    const TerminalPair& old = inst.terminal_pairs()[i];
    const TerminalPair& fresh = fresh_pairs[i];
    for (VertexId w : inst.out_neighbors(old.source)) {
      for (VertexId u : reps[w]) arcs.emplace_back(fresh.source, u);
    }
    for (VertexId w : inst.in_neighbors(old.sink)) {
      for (VertexId u : reps[w]) arcs.emplace_back(u, fresh.sink);
    }
    // A pair with source == sink, or with a direct source->sink arc, has no
    // multicut at all; a direct arc between the fresh terminals keeps the
    // rewritten instance a NO instance. (The copy device covers every path
    // with at least one internal vertex, but not these two cases.)
    if (old.source == old.sink || inst.has_arc(old.source, old.sink)) {
      arcs.emplace_back(fresh.source, fresh.sink);
    }
  }

  return DagInstance::build(std::move(vertices), std::move(arcs),
                            std::move(fresh_pairs), p);
}

DagInstance kill(const DagInstance& inst, VertexId v) {
  if (!inst.has_vertex(v)) {
    throw Error(ErrorCode::DanglingReference, "kill: unknown vertex");
  }
  if (inst.is_terminal(v)) {
    throw Error(ErrorCode::KillTerminal, "kill: vertex is a terminal");
  }
  if (inst.budget() < 1) {
    throw Error(ErrorCode::BudgetExhausted, "kill: no budget left");
  }
  VertexSet vertices = detail::set_difference(inst.vertex_ids(), VertexSet{v});
  std::vector<Arc> arcs;
  arcs.reserve(inst.arcs().size());
  for (const Arc& a : inst.arcs()) {
    if (a.first != v && a.second != v) arcs.push_back(a);
  }
  return inst.derive(std::move(vertices), std::move(arcs), inst.budget() - 1);
}

DagInstance bypass(const DagInstance& inst, VertexId v) {
  if (!inst.has_vertex(v)) {
    throw Error(ErrorCode::DanglingReference, "bypass: unknown vertex");
  }
  if (inst.is_terminal(v)) {
    throw Error(ErrorCode::BypassTerminal, "bypass: vertex is a terminal");
  }
  VertexSet vertices = detail::set_difference(inst.vertex_ids(), VertexSet{v});
  std::vector<Arc> arcs;
  arcs.reserve(inst.arcs().size() +
               inst.in_neighbors(v).size() * inst.out_neighbors(v).size());
  for (const Arc& a : inst.arcs()) {
    if (a.first != v && a.second != v) arcs.push_back(a);
  }
  for (VertexId u : inst.in_neighbors(v)) {
    for (VertexId w : inst.out_neighbors(v)) arcs.emplace_back(u, w);
  }
  return inst.derive(std::move(vertices), std::move(arcs), inst.budget());
}

DagInstance torso(const DagInstance& inst, const VertexSet& x) {
  for (VertexId v : x) {
    if (!inst.has_vertex(v)) {
      throw Error(ErrorCode::DanglingReference, "torso: unknown vertex");
    }
    if (inst.is_terminal(v)) {
      throw Error(ErrorCode::ContainsTerminal, "torso: set contains a terminal");
    }
  }
  if (x.empty()) return inst;

  VertexSet vertices = detail::set_difference(inst.vertex_ids(), x);
  std::vector<Arc> arcs;
  // Arc (u,w) survives iff there is a u->w path internal to x.
  std::vector<char> in_x(inst.vertex_count(), 0), seen(inst.vertex_count(), 0);
  auto idx = [&](VertexId v) { return static_cast<std::size_t>(inst.topo_pos(v)); };
  for (VertexId v : x) in_x[idx(v)] = 1;

  std::vector<VertexId> stack;
  for (VertexId u : vertices) {
    std::fill(seen.begin(), seen.end(), 0);
    stack.clear();
    for (VertexId w : inst.out_neighbors(u)) {
      if (!seen[idx(w)]) {
        seen[idx(w)] = 1;
        if (in_x[idx(w)]) {
          stack.push_back(w);
        } else {
          arcs.emplace_back(u, w);
        }
      }
    }
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : inst.out_neighbors(v)) {
        if (seen[idx(w)]) continue;
        seen[idx(w)] = 1;
        if (in_x[idx(w)]) {
          stack.push_back(w);
        } else {
          arcs.emplace_back(u, w);
        }
      }
    }
  }
  return inst.derive(std::move(vertices), std::move(arcs), inst.budget());
}

DagInstance remove_vertices(const DagInstance& inst, const VertexSet& x) {
  for (VertexId v : x) {
    if (!inst.has_vertex(v)) {
      throw Error(ErrorCode::DanglingReference, "remove_vertices: unknown vertex");
    }
    if (inst.is_terminal(v)) {
      throw Error(ErrorCode::ContainsTerminal, "remove_vertices: terminal");
    }
  }
  if (x.empty()) return inst;
  VertexSet vertices = detail::set_difference(inst.vertex_ids(), x);
  std::vector<Arc> arcs;
  arcs.reserve(inst.arcs().size());
  for (const Arc& a : inst.arcs()) {
    if (!detail::contains(x, a.first) && !detail::contains(x, a.second)) {
      arcs.push_back(a);
    }
  }
  return inst.derive(std::move(vertices), std::move(arcs), inst.budget());
}

namespace {

// Shared groundwork for degree_reduced / degree_branch: the per-pair mincuts
// closest to the sources.
std::vector<VertexSet> closest_source_cuts(const DagInstance& inst) {
  std::vector<VertexSet> cuts;
  cuts.reserve(inst.terminal_pairs().size());
  for (const TerminalPair& p : inst.terminal_pairs()) {
    SeparatorReport rep =
        min_separator(inst, {p.source}, {p.sink}, inst.budget());
    if (rep.size.is_infinite()) {
      throw Error(ErrorCode::InfeasibleCut,
                  "degree reduction requires every cut within budget");
    }
    cuts.push_back(std::move(rep.closest_to_x));
  }
  return cuts;
}

DagInstance build_degree_reduced(const DagInstance& inst,
                                 const std::vector<VertexSet>& cuts) {
  VertexSet all_cut_vertices;
  for (const VertexSet& b : cuts) {
    all_cut_vertices = detail::set_union(all_cut_vertices, b);
  }
  SrcMap src = src_map(inst);

  std::vector<Arc> arcs;
  arcs.reserve(inst.arcs().size());
  for (const Arc& a : inst.arcs()) {
    // normalized instances have no arcs into sources, so this drops exactly
    // the source out-arcs
    if (!detail::contains(inst.sources(), a.first) &&
        !detail::contains(inst.sources(), a.second)) {
      arcs.push_back(a);
    }
  }
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const VertexId s_i = inst.terminal_pairs()[i].source;
    const std::uint64_t s_bit = src.mask_for({s_i});
    const VertexSet reach_from_cut = reachable(inst, cuts[i], {});
    for (VertexId v : cuts[i]) arcs.emplace_back(s_i, v);
    for (VertexId v : all_cut_vertices) {
      if ((src.mask_of(v) & s_bit) && !detail::contains(reach_from_cut, v)) {
        arcs.emplace_back(s_i, v);
      }
    }
  }
  return inst.derive(inst.vertex_ids(), std::move(arcs), inst.budget());
}

}  // namespace

DagInstance degree_reduced(const DagInstance& inst) {
  return build_degree_reduced(inst, closest_source_cuts(inst));
}

DegreeBranchResult degree_branch(const DagInstance& inst) {
  const std::vector<VertexSet> cuts = closest_source_cuts(inst);

  DegreeBranchResult result;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    VertexSet by_topo = cuts[i];
    std::sort(by_topo.begin(), by_topo.end(), [&](VertexId a, VertexId b) {
      return inst.topo_pos(a) < inst.topo_pos(b);
    });
    for (VertexId v : by_topo) {
      const VertexId t_i = inst.terminal_pairs()[i].sink;
      std::vector<Arc> arcs = inst.arcs();
      arcs.emplace_back(v, t_i);
      DagInstance with_arc =
          inst.derive(inst.vertex_ids(), std::move(arcs), inst.budget());
      result.children.push_back(
          {static_cast<int>(i), v, bypass(with_arc, v)});
    }
  }
  result.kept = build_degree_reduced(inst, cuts);
  return result;
}

}  // namespace dagmc
