#pragma once

#include <cstdint>
#include <vector>

#include "dagmc/instance.hpp"

namespace dagmc {

enum class ShadowStrategyKind { Exhaustive, Randomized, OracleAssisted };

struct ShadowStrategy {
  ShadowStrategyKind kind = ShadowStrategyKind::Exhaustive;
  std::uint64_t seed = 0;      // Randomized only
  int iterations = 64;         // Randomized only
  int exhaustive_limit = 16;   // max nonterminal count for Exhaustive

  static ShadowStrategy exhaustive(int limit = 16) {
    ShadowStrategy s;
    s.kind = ShadowStrategyKind::Exhaustive;
    s.exhaustive_limit = limit;
    return s;
  }
  static ShadowStrategy randomized(std::uint64_t seed, int iterations = 64) {
    ShadowStrategy s;
    s.kind = ShadowStrategyKind::Randomized;
    s.seed = seed;
    s.iterations = iterations;
    return s;
  }
  static ShadowStrategy oracle_assisted() {
    ShadowStrategy s;
    s.kind = ShadowStrategyKind::OracleAssisted;
    return s;
  }
};

struct ShadowFamily {
  std::vector<VertexSet> sets;
  ShadowStrategy strategy;
};

// Nonterminal vertices outside `cut` that no source terminal reaches once
// `cut` is removed.
VertexSet source_shadow(const DagInstance& inst, const VertexSet& cut);

// A family of candidate shadow-covering sets. The contract downstream: for a
// YES instance with lex-min solution Z, some member A satisfies A ∩ Z = ∅
// and source_shadow(inst, Z) ⊆ A. Exhaustive (the powerset of the
// nonterminals, subject to a size limit) and OracleAssisted guarantee this;
// Randomized only achieves it with high probability.
ShadowFamily shadow_family(const DagInstance& inst, const ShadowStrategy& strategy);

// Test-harness realization of the OracleAssisted strategy: the source shadow
// of the brute-force lex-min solution, or the empty set on a NO instance.
VertexSet lexmin_shadow_oracle(const DagInstance& inst);

}  // namespace dagmc
