#include "dagmc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "dagmc/detail/sorted_set.hpp"
#include "dagmc/separators.hpp"
#include "dagmc/transforms.hpp"

namespace dagmc {

void SolveTrace::merge(const SolveTrace& other) {
  nodes_expanded += other.nodes_expanded;
  memo_hits += other.memo_hits;
  max_depth = std::max(max_depth, other.max_depth);
  subcase_count += other.subcase_count;
  shadow_subcase_count += other.shadow_subcase_count;
  for (const auto& [stage, count] : other.children_per_stage) {
    children_per_stage[stage] += count;
  }
  shadow_family_sizes.insert(shadow_family_sizes.end(),
                             other.shadow_family_sizes.begin(),
                             other.shadow_family_sizes.end());
  dedup_skipped += other.dedup_skipped;
  potential_violations += other.potential_violations;
  depth_violations += other.depth_violations;
}

namespace {

std::string instance_key(const DagInstance& g) {
  std::string key;
  key.reserve((g.vertex_count() + 2 * g.arcs().size() + 2) * sizeof(int));
  auto push = [&](int x) { key.append(reinterpret_cast<const char*>(&x), sizeof(int)); };
  push(g.budget());
  push(static_cast<int>(g.vertex_count()));
  for (VertexId v : g.vertex_ids()) push(v);
  for (const Arc& a : g.arcs()) {
    push(a.first);
    push(a.second);
  }
  return key;
}

std::string key_of_set(const VertexSet& s) {
  std::string key;
  key.reserve(s.size() * sizeof(int));
  for (VertexId v : s) key.append(reinterpret_cast<const char*>(&v), sizeof(int));
  return key;
}

std::string set_label(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  out += '}';
  return out;
}

struct PairCuts {
  std::vector<SepSize> sizes;
  bool feasible = true;  // all cuts within budget
  bool all_zero = true;
};

PairCuts compute_pair_cuts(const DagInstance& inst) {
  PairCuts out;
  out.sizes.reserve(inst.terminal_pairs().size());
  for (const TerminalPair& p : inst.terminal_pairs()) {
    if (p.source == p.sink) {
      out.sizes.push_back(SepSize::infinite());
      out.feasible = false;
      continue;
    }
    SepSize size = min_separator(inst, {p.source}, {p.sink}, inst.budget()).size;
    out.sizes.push_back(size);
    if (size.is_infinite()) out.feasible = false;
    else if (size.value() != 0) out.all_zero = false;
  }
  if (!out.feasible) out.all_zero = false;
  return out;
}

bool within_budget(const DagInstance& inst) {
  for (const TerminalPair& p : inst.terminal_pairs()) {
    if (p.source == p.sink) return false;
    if (min_separator(inst, {p.source}, {p.sink}, inst.budget()).size.is_infinite()) {
      return false;
    }
  }
  return true;
}

void require_normalized(const DagInstance& inst) {
  VertexSet seen;
  for (const TerminalPair& p : inst.terminal_pairs()) {
    if (p.source == p.sink || detail::contains(seen, p.source) ||
        detail::contains(seen, p.sink)) {
      throw Error(ErrorCode::InternalError,
                  "branching_step requires a normalized instance");
    }
    detail::insert_unique(seen, p.source);
    detail::insert_unique(seen, p.sink);
  }
  for (const TerminalPair& p : inst.terminal_pairs()) {
    if (!inst.in_neighbors(p.source).empty() || !inst.out_neighbors(p.sink).empty()) {
      throw Error(ErrorCode::InternalError,
                  "branching_step requires a normalized instance");
    }
  }
}

VertexSet source_out_neighborhood(const DagInstance& g) {
  VertexSet out;
  for (VertexId s : g.sources()) {
    for (VertexId w : g.out_neighbors(s)) {
      if (!detail::contains(g.sources(), w)) detail::insert_unique(out, w);
    }
  }
  return out;
}

VertexSet sort_by_topo(const DagInstance& g, VertexSet set) {
  std::sort(set.begin(), set.end(),
            [&](VertexId a, VertexId b) { return g.topo_pos(a) < g.topo_pos(b); });
  return set;
}

// Generates the children of one branching step in canonical order and hands
// them to `visit`; stops early when visit returns true. Returns true when
// generation was stopped by the visitor.
bool generate_children(const BranchNode& node, const ShadowStrategy& strategy,
                       SolveTrace& trace,
                       const std::function<bool(BranchNode&&)>& visit) {
  const DagInstance& inst = node.instance;
  const int p = inst.budget();
  const int r = inst.pair_count();
  const long long rp = static_cast<long long>(r) * p;
  const VertexSet& sources = inst.sources();
  if (sources.size() > 30) {
    throw Error(ErrorCode::TooLarge, "branching over more than 30 sources");
  }

  const SrcMap src_entry = src_map(inst);
  std::unordered_set<std::string> emitted;

  auto emit = [&](DagInstance&& child, const VertexSet& added_kills,
                  std::string label, const char* stage) -> bool {
    std::string key = instance_key(child);
    if (!emitted.insert(std::move(key)).second) {
      ++trace.dedup_skipped;
      return false;
    }
    ++trace.children_per_stage[stage];
    BranchNode out;
    out.instance = std::move(child);
    out.kills_so_far = detail::set_union(node.kills_so_far, added_kills);
    out.depth = node.depth + 1;
    out.label = std::move(label);
    return visit(std::move(out));
  };

  const std::uint64_t full_mask = (std::uint64_t{1} << sources.size()) - 1;
  for (std::uint64_t s_mask = 1; s_mask <= full_mask; ++s_mask) {
    VertexSet subcase_sources;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      if (s_mask & (std::uint64_t{1} << i)) subcase_sources.push_back(sources[i]);
    }

    // the subcase guesses a solution vertex with this exact source set,
    // evaluated in the step-entry graph
    VertexSet vs_entry;
    VertexSet bypass_below;  // src strictly inside the guessed set
    for (VertexId v : inst.vertex_ids()) {
      if (inst.is_terminal(v)) continue;
      const std::uint64_t m = src_entry.mask_of(v);
      if (m == s_mask) vs_entry.push_back(v);
      if (m != s_mask && (m & s_mask) == m) bypass_below.push_back(v);
    }
    if (vs_entry.empty()) continue;
    ++trace.subcase_count;
    const std::string s_label = "S=" + set_label(subcase_sources);

    DagInstance g1 = torso(inst, bypass_below);
    if (!within_budget(g1)) continue;  // wrong guess: the solution survives here

    DegreeBranchResult dbr1 = degree_branch(g1);
    if (static_cast<long long>(dbr1.children.size()) > rp) {
      throw Error(ErrorCode::InternalError, "degree branching emitted too many children");
    }
    for (DegreeBranchChild& child : dbr1.children) {
      if (emit(std::move(child.instance), {},
               s_label + "/dr1(i=" + std::to_string(child.pair_index + 1) +
                   ",v=" + std::to_string(child.via_vertex) + ")",
               "deg_red_1")) {
        return true;
      }
    }
    DagInstance g2 = std::move(dbr1.kept);

    const SrcMap src2 = src_map(g2);
    VertexSet futile;
    for (VertexId v : g2.vertex_ids()) {
      if (g2.is_terminal(v)) continue;
      const std::uint64_t m2 = src2.mask_of(v);
      if (src_entry.mask_of(v) == s_mask && m2 != 0 && m2 != s_mask) {
        throw Error(ErrorCode::InternalError,
                    "source sets of guessed vertices must collapse to {} or S");
      }
      if (m2 == 0) futile.push_back(v);
    }
    DagInstance g3 = remove_vertices(g2, futile);

    const VertexSet n3plus = source_out_neighborhood(g3);
    VertexSet g3_nonterm = g3.nonterminals();

    // Shadow-covering subcases. For the exhaustive strategy the powerset is
    // enumerated over the only vertices whose shadow status the later stages
    // depend on (the guessed-source-set vertices outside the source
    // neighborhood); every other member of the full powerset produces one of
    // the same torso results, so the children are identical.
    std::vector<VertexSet> shadow_sets;
    std::uint64_t family_size = 0;
    std::size_t universe_bits = 0;
    VertexSet universe;
    if (strategy.kind == ShadowStrategyKind::Exhaustive) {
      universe = sort_by_topo(
          g3, detail::set_difference(
                  detail::set_intersection(vs_entry, g3_nonterm), n3plus));
      if (universe.size() > 30) {
        throw Error(ErrorCode::ExhaustiveLimitExceeded,
                    "exhaustive shadow enumeration over more than 30 vertices");
      }
      universe_bits = universe.size();
      family_size = std::uint64_t{1} << universe_bits;
    } else {
      ShadowFamily family = shadow_family(g3, strategy);
      family_size = family.sets.size();
      shadow_sets = std::move(family.sets);
    }
    trace.shadow_family_sizes.push_back(family_size);

    std::unordered_set<std::string> seen_bypass_sets;
    for (std::uint64_t a_index = 0; a_index < family_size; ++a_index) {
      VertexSet bypass_set;
      if (strategy.kind == ShadowStrategyKind::Exhaustive) {
        for (std::size_t i = 0; i < universe_bits; ++i) {
          if (a_index & (std::uint64_t{1} << i)) bypass_set.push_back(universe[i]);
        }
        std::sort(bypass_set.begin(), bypass_set.end());
      } else {
        bypass_set = detail::set_difference(shadow_sets[a_index], n3plus);
        if (!seen_bypass_sets.insert(key_of_set(bypass_set)).second) continue;
      }

      ++trace.shadow_subcase_count;
      const std::string a_label = s_label + "/A#" + std::to_string(a_index);

      DagInstance g4 = torso(g3, bypass_set);
      if (!within_budget(g4)) continue;

      const VertexSet w4 = detail::set_intersection(vs_entry, g4.vertex_ids());

      // a vertex of the guessed set whose surviving source connections the
      // solution changes must be a source out-neighbor with all nonterminal
      // in-neighbors deleted; branch over the candidates
      const VertexSet g4_source_nb = source_out_neighborhood(g4);
      if (static_cast<long long>(g4_source_nb.size()) > rp) {
        throw Error(ErrorCode::InternalError,
                    "degree reduction failed to bound the source neighborhood");
      }
      VertexSet magic_candidates =
          sort_by_topo(g4, detail::set_intersection(g4_source_nb, w4));
      for (VertexId v : magic_candidates) {
        VertexSet to_kill;
        for (VertexId u : g4.in_neighbors(v)) {
          if (!g4.is_terminal(u)) detail::insert_unique(to_kill, u);
        }
        if (to_kill.empty()) continue;
        if (static_cast<int>(to_kill.size()) > g4.budget()) continue;  // over budget: NO case
        DagInstance child = g4;
        for (VertexId u : to_kill) child = kill(child, u);
        child = bypass(child, v);
        if (emit(std::move(child), to_kill,
                 a_label + "/magic(v=" + std::to_string(v) + ")", "magic")) {
          return true;
        }
      }

      // flatten: every surviving guessed vertex becomes a direct
      // out-neighbor of the guessed sources
      std::vector<Arc> g5_arcs;
      g5_arcs.reserve(g4.arcs().size() + subcase_sources.size() * w4.size());
      for (const Arc& a : g4.arcs()) {
        if (!detail::contains(w4, a.second)) g5_arcs.push_back(a);
      }
      for (VertexId s : subcase_sources) {
        for (VertexId v : w4) g5_arcs.emplace_back(s, v);
      }
      DagInstance g5 = g4.derive(g4.vertex_ids(), std::move(g5_arcs), g4.budget());
      if (!within_budget(g5)) continue;

      DegreeBranchResult dbr2 = degree_branch(g5);
      if (static_cast<long long>(dbr2.children.size()) > rp) {
        throw Error(ErrorCode::InternalError, "degree branching emitted too many children");
      }
      for (DegreeBranchChild& child : dbr2.children) {
        if (emit(std::move(child.instance), {},
                 a_label + "/dr2(i=" + std::to_string(child.pair_index + 1) +
                     ",v=" + std::to_string(child.via_vertex) + ")",
                 "deg_red_2")) {
          return true;
        }
      }
      DagInstance g6 = std::move(dbr2.kept);

      const SrcMap src6 = src_map(g6);
      VertexSet futile2;
      for (VertexId v : g6.vertex_ids()) {
        if (!g6.is_terminal(v) && src6.mask_of(v) == 0) futile2.push_back(v);
      }
      DagInstance g7 = remove_vertices(g6, futile2);

      const VertexSet w7 =
          sort_by_topo(g7, detail::set_intersection(vs_entry, g7.vertex_ids()));
      if (static_cast<long long>(w7.size()) > rp) {
        throw Error(ErrorCode::InternalError,
                    "more final-branch candidates than r*p");
      }
      if (g7.budget() < 1) continue;
      for (VertexId v : w7) {
        if (emit(kill(g7, v), {v}, a_label + "/final(v=" + std::to_string(v) + ")",
                 "final")) {
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

StepResult branching_step(const BranchNode& node, const ShadowStrategy& strategy,
                          SolveTrace* trace) {
  require_normalized(node.instance);
  SolveTrace local;
  SolveTrace& t = trace ? *trace : local;

  const PairCuts cuts = compute_pair_cuts(node.instance);
  StepResult result;
  if (!cuts.feasible) {
    result.kind = StepResult::Kind::No;
    return result;
  }
  if (cuts.all_zero) {
    result.kind = StepResult::Kind::YesLeaf;
    return result;
  }
  result.kind = StepResult::Kind::Children;
  generate_children(node, strategy, t, [&](BranchNode&& child) {
    result.children.push_back(std::move(child));
    return false;
  });
  return result;
}

namespace {

class Explorer {
 public:
  Explorer(const ShadowStrategy& strategy, int depth_budget)
      : strategy_(strategy), depth_budget_(depth_budget) {}

  SolveTrace& trace() { return trace_; }

  // Solution of node.instance itself (no path kills included), or nullopt.
  std::optional<VertexSet> explore(const BranchNode& node,
                                   std::optional<int> parent_potential) {
    if (node.depth > depth_budget_) {
      ++trace_.depth_violations;
      throw Error(ErrorCode::InternalError,
                  "recursion deeper than (r+1)p at node " + node.label);
    }
    trace_.max_depth = std::max(trace_.max_depth, node.depth);

    const DagInstance& inst = node.instance;
    const PairCuts cuts = compute_pair_cuts(inst);
    std::optional<int> own_potential;
    if (cuts.feasible) {
      long long sum = 0;
      for (const SepSize& s : cuts.sizes) sum += s.value();
      own_potential = static_cast<int>(
          static_cast<long long>(inst.pair_count() + 1) * inst.budget() - sum);
    }
    if (parent_potential.has_value() && own_potential.has_value() &&
        *own_potential >= *parent_potential) {
      ++trace_.potential_violations;
      throw Error(ErrorCode::InternalError,
                  "potential did not strictly decrease at node " + node.label);
    }

    if (!cuts.feasible) return std::nullopt;
    if (cuts.all_zero) return VertexSet{};

    const std::string key = instance_key(inst);
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++trace_.memo_hits;
      return it->second;
    }
    ++trace_.nodes_expanded;

    std::optional<VertexSet> result;
    generate_children(node, strategy_, trace_, [&](BranchNode&& child) {
      VertexSet added = detail::set_difference(child.kills_so_far, node.kills_so_far);
      std::optional<VertexSet> sub = explore(child, own_potential);
      if (sub.has_value()) {
        result = detail::set_union(*sub, added);
        return true;
      }
      return false;
    });
    memo_.emplace(key, result);
    return result;
  }

 private:
  ShadowStrategy strategy_;
  int depth_budget_;
  SolveTrace trace_;
  std::unordered_map<std::string, std::optional<VertexSet>> memo_;
};

}  // namespace

SolveOutcome solve(const DagInstance& inst, const SolveOptions& options) {
  // re-normalizing an already-normalized instance would only add inert
  // copies, so skip it
  const DagInstance root_inst = is_normalized(inst) ? inst : normalize(inst);
  const int depth_budget = (root_inst.pair_count() + 1) * root_inst.budget();

  SolveOutcome outcome;
  outcome.trace.root_potential = potential(root_inst);

  BranchNode root;
  root.instance = root_inst;
  root.label = "root";

  std::optional<VertexSet> solution;
  if (options.threads <= 1) {
    Explorer explorer(options.shadow, depth_budget);
    solution = explorer.explore(root, std::nullopt);
    outcome.trace.merge(explorer.trace());
  } else {
    // Parallel mode: materialize the root children, explore each subtree
    // fully on its own worker (own memo and trace), and commit the answer of
    // the first YES subtree in canonical order. No cross-thread cancellation,
    // so the outcome and the merged trace are schedule-independent.
    SolveTrace root_trace;
    const StepResult step = branching_step(root, options.shadow, &root_trace);
    if (step.kind == StepResult::Kind::YesLeaf) {
      solution = VertexSet{};
      outcome.trace.merge(root_trace);
    } else if (step.kind == StepResult::Kind::No) {
      outcome.trace.merge(root_trace);
    } else {
      root_trace.nodes_expanded += 1;
      const std::optional<int> root_phi = potential(root_inst);
      std::vector<std::optional<VertexSet>> results(step.children.size());
      std::vector<SolveTrace> traces(step.children.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&]() {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= step.children.size()) break;
          Explorer explorer(options.shadow, depth_budget);
          results[i] = explorer.explore(step.children[i], root_phi);
          traces[i] = explorer.trace();
        }
      };
      std::vector<std::thread> pool;
      const int n_threads = std::min<int>(options.threads,
                                          static_cast<int>(step.children.size()));
      pool.reserve(static_cast<std::size_t>(n_threads));
      for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
      for (std::thread& th : pool) th.join();

      outcome.trace.merge(root_trace);
      for (std::size_t i = 0; i < step.children.size(); ++i) {
        outcome.trace.merge(traces[i]);
      }
      for (std::size_t i = 0; i < step.children.size(); ++i) {
        if (results[i].has_value()) {
          VertexSet added = detail::set_difference(step.children[i].kills_so_far,
                                                   root.kills_so_far);
          solution = detail::set_union(*results[i], added);
          break;
        }
      }
    }
  }

  if (solution.has_value()) {
    VertexSet mapped = detail::set_intersection(*solution, inst.vertex_ids());
    if (!verify(inst, mapped)) {
      throw Error(ErrorCode::VerificationFailed,
                  "solver produced a cut that fails verification");
    }
    outcome.cut = std::move(mapped);
  }
  return outcome;
}

bool verify(const DagInstance& inst, const VertexSet& cut) {
  return static_cast<int>(cut.size()) <= inst.budget() && is_multicut(inst, cut);
}

}  // namespace dagmc
