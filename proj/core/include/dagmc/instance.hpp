#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dagmc/errors.hpp"

namespace dagmc {

using VertexId = int;
// Always sorted ascending and duplicate-free.
using VertexSet = std::vector<VertexId>;
using Arc = std::pair<VertexId, VertexId>;

struct TerminalPair {
  VertexId source{};
  VertexId sink{};
  bool operator==(const TerminalPair&) const = default;
};

enum class LexOrder { Less, Equal, Greater };

// An immutable DAG multicut instance: vertices with stable integer ids, simple
// arcs, an ordered list of terminal pairs, a deletion budget, and a fixed
// topological order. Transforms produce fresh instances; children keep a
// subset of the parent's ids and inherit the induced topological order.
class DagInstance {
 public:
  DagInstance() = default;

  // Validates the input, collapses duplicate arcs, rejects self-loops and
  // cycles, and fixes the topological order via Kahn's algorithm with
  // smallest-id tie-break.
  static DagInstance build(VertexSet vertices, std::vector<Arc> arcs,
                           std::vector<TerminalPair> pairs, int budget);

  // Child construction for transforms: keeps this instance's terminal pairs
  // and the induced topological order. Every arc must go forward in the
  // inherited order; terminals must survive.
  DagInstance derive(VertexSet vertices, std::vector<Arc> arcs, int budget) const;

  const VertexSet& vertex_ids() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<TerminalPair>& terminal_pairs() const { return pairs_; }
  int budget() const { return budget_; }
  int pair_count() const { return static_cast<int>(pairs_.size()); }

  const VertexSet& terminals() const { return terminals_; }
  const VertexSet& sources() const { return sources_; }
  const VertexSet& sinks() const { return sinks_; }
  VertexSet nonterminals() const;

  bool has_vertex(VertexId v) const;
  bool has_arc(VertexId u, VertexId v) const;
  bool is_terminal(VertexId v) const;

  // The fixed topological order (vertex ids, first-to-last).
  const std::vector<VertexId>& topo_order() const { return topo_; }
  // Rank of v in the topological order, 0-based.
  int topo_pos(VertexId v) const;

  const VertexSet& out_neighbors(VertexId v) const;
  const VertexSet& in_neighbors(VertexId v) const;

  VertexId max_vertex_id() const { return max_id_; }
  // True when some pair has source == sink; such instances are valid to
  // build but have no multicut at all.
  bool has_degenerate_pair() const { return degenerate_pair_; }

 private:
  int require_index(VertexId v) const;
  void finalize();  // builds adjacency, terminal sets, topo positions

  VertexSet vertices_;
  std::vector<Arc> arcs_;
  std::vector<TerminalPair> pairs_;
  int budget_ = 0;
  std::vector<VertexId> topo_;

  VertexSet terminals_, sources_, sinks_;
  VertexId max_id_ = 0;
  bool degenerate_pair_ = false;

  std::vector<int> index_of_id_;  // id -> dense index, -1 when absent
  std::vector<VertexSet> out_, in_;
  std::vector<int> topo_pos_;  // dense index -> rank
};

// All vertices reachable from `from` in the instance with `deleted` removed.
// Reflexive: surviving members of `from` are included.
VertexSet reachable(const DagInstance& inst, const VertexSet& from,
                    const VertexSet& deleted);

// For every vertex, the set of source terminals that reach it. Stored as
// bitmasks over the sorted unique source list.
class SrcMap {
 public:
  SrcMap() = default;
  SrcMap(VertexSet source_universe, std::vector<VertexId> ids,
         std::vector<std::uint64_t> masks);

  const VertexSet& source_universe() const { return universe_; }
  std::uint64_t mask_of(VertexId v) const;
  VertexSet sources_of(VertexId v) const;
  std::uint64_t mask_for(const VertexSet& subset) const;

 private:
  VertexSet universe_;
  std::vector<VertexId> ids_;           // sorted
  std::vector<std::uint64_t> masks_;    // parallel to ids_
};

SrcMap src_map(const DagInstance& inst);

// V(G, S): the nonterminal vertices whose source set is exactly S.
VertexSet vertices_with_src(const DagInstance& inst, const VertexSet& with);
VertexSet vertices_with_src(const DagInstance& inst, const SrcMap& map,
                            const VertexSet& with);

// Compares the topologically sorted sequences of two vertex sets
// lexicographically; a strict prefix is smaller.
LexOrder lex_compare(const DagInstance& inst, const VertexSet& a,
                     const VertexSet& b);

// True iff `cut` contains no terminal and every terminal pair is separated in
// the instance minus `cut`. The budget is not checked here.
bool is_multicut(const DagInstance& inst, const VertexSet& cut);

}  // namespace dagmc
