#include "dagmc/shadows.hpp"

#include <algorithm>
#include <random>

#include "dagmc/detail/sorted_set.hpp"
#include "dagmc/oracle.hpp"

namespace dagmc {

VertexSet source_shadow(const DagInstance& inst, const VertexSet& cut) {
  for (VertexId v : cut) {
    if (inst.is_terminal(v)) {
      throw Error(ErrorCode::ContainsTerminal, "source_shadow: cut contains a terminal");
    }
  }
  VertexSet reach = inst.sources().empty()
                        ? VertexSet{}
                        : reachable(inst, inst.sources(), cut);
  VertexSet shadow;
  for (VertexId v : inst.vertex_ids()) {
    if (inst.is_terminal(v)) continue;
    if (detail::contains(cut, v)) continue;
    if (!detail::contains(reach, v)) shadow.push_back(v);
  }
  return shadow;
}

ShadowFamily shadow_family(const DagInstance& inst, const ShadowStrategy& strategy) {
  // nonterminals in topological order; bit k of an enumeration mask refers
  // to the k-th of these
  std::vector<VertexId> nonterm;
  for (VertexId v : inst.topo_order()) {
    if (!inst.is_terminal(v)) nonterm.push_back(v);
  }

  ShadowFamily family;
  family.strategy = strategy;

  switch (strategy.kind) {
    case ShadowStrategyKind::Exhaustive: {
      if (nonterm.size() > static_cast<std::size_t>(strategy.exhaustive_limit)) {
        throw Error(ErrorCode::ExhaustiveLimitExceeded,
                    "shadow_family: " + std::to_string(nonterm.size()) +
                        " nonterminals exceed the exhaustive limit of " +
                        std::to_string(strategy.exhaustive_limit));
      }
      const std::uint64_t count = std::uint64_t{1} << nonterm.size();
      family.sets.reserve(count);
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        VertexSet set;
        for (std::size_t i = 0; i < nonterm.size(); ++i) {
          if (mask & (std::uint64_t{1} << i)) set.push_back(nonterm[i]);
        }
        std::sort(set.begin(), set.end());
        family.sets.push_back(std::move(set));
      }
      break;
    }
    case ShadowStrategyKind::Randomized: {
      if (strategy.iterations < 0) {
        throw Error(ErrorCode::DanglingReference, "shadow_family: negative iterations");
      }
      // each vertex joins with probability 1/2; raw engine bits keep the
      // result identical across standard library implementations
      std::mt19937_64 rng(strategy.seed);
      family.sets.reserve(static_cast<std::size_t>(strategy.iterations));
      for (int it = 0; it < strategy.iterations; ++it) {
        VertexSet set;
        for (VertexId v : nonterm) {
          if (rng() & 1) set.push_back(v);
        }
        std::sort(set.begin(), set.end());
        family.sets.push_back(std::move(set));
      }
      break;
    }
    case ShadowStrategyKind::OracleAssisted: {
      family.sets.push_back(lexmin_shadow_oracle(inst));
      break;
    }
  }
  return family;
}

VertexSet lexmin_shadow_oracle(const DagInstance& inst) {
  std::optional<VertexSet> solution = brute_solve(inst);
  if (!solution.has_value()) return {};
  return source_shadow(inst, *solution);
}

}  // namespace dagmc
