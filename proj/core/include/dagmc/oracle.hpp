#pragma once

#include <optional>

#include "dagmc/instance.hpp"

namespace dagmc {

// Ground-truth solver: enumerates candidate cut sets by (size ascending,
// lexicographic ascending in the topological order) and returns the first
// multicut, which is by construction the lex-min solution. nullopt means NO.
// Guarded against infeasible enumeration sizes.
std::optional<VertexSet> brute_solve(const DagInstance& inst);

class ArcWeight {
 public:
  static ArcWeight finite(int value);
  static ArcWeight infinite() { return ArcWeight(); }

  bool is_infinite() const { return value_ < 0; }
  int value() const {
    if (is_infinite()) {
      throw Error(ErrorCode::InternalError, "ArcWeight: infinite has no value");
    }
    return value_;
  }
  bool operator==(const ArcWeight&) const = default;

 private:
  ArcWeight() = default;
  explicit ArcWeight(int v) : value_(v) {}
  int value_ = -1;
};

struct WeightedArc {
  VertexId from{};
  VertexId to{};
  ArcWeight weight = ArcWeight::infinite();
};

// Arc-deletion multicut instance with {light, heavy, infinite} weights, as
// produced by the hardness-reduction generators. Infinite arcs are never
// deletable.
struct WeightedArcInstance {
  VertexSet vertices;
  std::vector<WeightedArc> arcs;
  std::vector<TerminalPair> pairs;
  int budget = 0;

  // Validates references, simplicity and acyclicity.
  static WeightedArcInstance build(VertexSet vertices, std::vector<WeightedArc> arcs,
                                   std::vector<TerminalPair> pairs, int budget);
};

// True iff some set of finite-weight arcs of total weight <= budget
// separates every terminal pair. Complete search over hitting sets of
// violated paths, with a work cap that raises TooLarge instead of hanging.
bool brute_solve_weighted_arcs(const WeightedArcInstance& inst);

}  // namespace dagmc
