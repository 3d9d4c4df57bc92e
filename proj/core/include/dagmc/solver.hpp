#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dagmc/instance.hpp"
#include "dagmc/shadows.hpp"

namespace dagmc {

struct SolveTrace {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t memo_hits = 0;
  int max_depth = 0;
  std::optional<int> root_potential;
  std::uint64_t subcase_count = 0;         // source-subset subcases entered
  std::uint64_t shadow_subcase_count = 0;  // shadow-set pipelines run
  std::map<std::string, std::uint64_t> children_per_stage;
  std::vector<std::uint64_t> shadow_family_sizes;
  std::uint64_t dedup_skipped = 0;
  // Stay 0 on every normal return; a violation throws InternalError.
  std::uint64_t potential_violations = 0;
  std::uint64_t depth_violations = 0;

  void merge(const SolveTrace& other);
};

struct BranchNode {
  DagInstance instance;
  VertexSet kills_so_far;  // vertices killed on the path from the root
  int depth = 0;
  std::string label;  // provenance: subcase, shadow index, pipeline stage
};

struct StepResult {
  enum class Kind { No, YesLeaf, Children };
  Kind kind = Kind::No;
  // Kind::Children with an empty list means every subcase closed, i.e. NO.
  std::vector<BranchNode> children;
};

// One branching step: either concludes NO, recognizes an already-separated
// instance (YesLeaf), or produces child instances of strictly smaller
// potential whose disjunction is equivalent to the input. The instance must
// be normalized. Duplicate children are emitted once.
StepResult branching_step(const BranchNode& node, const ShadowStrategy& strategy,
                          SolveTrace* trace = nullptr);

struct SolveOptions {
  ShadowStrategy shadow = ShadowStrategy::exhaustive();
  // threads > 1 explores the root subtrees in parallel; every subtree is then
  // fully explored and the answer is taken from the first subtree in
  // canonical order, so the outcome is schedule-independent.
  int threads = 1;
};

struct SolveOutcome {
  std::optional<VertexSet> cut;  // nullopt = NO; ids refer to the input instance
  SolveTrace trace;
  bool yes() const { return cut.has_value(); }
};

// Normalizes the input, runs the branching recursion, and maps the solution
// back to the input's vertex ids. Complete for the Exhaustive and
// OracleAssisted shadow strategies; Monte Carlo (may report NO falsely) for
// Randomized.
SolveOutcome solve(const DagInstance& inst, const SolveOptions& options = {});

// True iff `cut` is a multicut of the instance and fits the budget.
bool verify(const DagInstance& inst, const VertexSet& cut);

}  // namespace dagmc
