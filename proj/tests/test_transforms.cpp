#include <doctest.h>

#include "dagmc/detail/sorted_set.hpp"
#include "dagmc/oracle.hpp"
#include "dagmc/separators.hpp"
#include "dagmc/transforms.hpp"
#include "test_support.hpp"

using namespace dagmc;
using namespace dagmc::testing;

TEST_SUITE("transforms") {

TEST_CASE("normalize grows the path instance to eight vertices") {
  DagInstance inst = normalize(path_instance());
  CHECK(inst.vertex_count() == 8);  // 4 originals - 2 terminals + 2*2 copies + 2 fresh
  CHECK(inst.pair_count() == 1);
  CHECK(inst.budget() == 1);
  for (const TerminalPair& p : inst.terminal_pairs()) {
    CHECK(inst.in_neighbors(p.source).empty());
    CHECK(inst.out_neighbors(p.sink).empty());
  }
  // fresh ids live above the original maximum
  for (VertexId v : inst.terminals()) CHECK(v > 4);
}

TEST_CASE("re-normalizing keeps the guarantees and the answer") {
  DagInstance once = normalize(path_instance());
  CHECK(is_normalized(once));
  DagInstance twice = normalize(once);
  CHECK(is_normalized(twice));
  CHECK(brute_solve(once).has_value() == brute_solve(twice).has_value());
}

TEST_CASE("normalize separates shared terminals") {
  // s1 = t2: vertex 2 is the source of one pair and the sink of the other
  DagInstance inst = DagInstance::build({1, 2, 3}, {{1, 2}, {2, 3}}, {{2, 3}, {1, 2}}, 1);
  DagInstance norm = normalize(inst);
  VertexSet seen;
  for (const TerminalPair& p : norm.terminal_pairs()) {
    CHECK_FALSE(detail::contains(seen, p.source));
    detail::insert_unique(seen, p.source);
    CHECK_FALSE(detail::contains(seen, p.sink));
    detail::insert_unique(seen, p.sink);
  }
}

TEST_CASE("normalize preserves the answer of degenerate and direct-arc pairs") {
  // s == t is never separable
  DagInstance degenerate = DagInstance::build({1, 2}, {{1, 2}}, {{1, 1}}, 2);
  CHECK_FALSE(brute_solve(degenerate).has_value());
  CHECK_FALSE(brute_solve(normalize(degenerate)).has_value());
  // a direct source->sink arc is never separable either
  DagInstance direct = DagInstance::build({1, 2, 3}, {{1, 2}, {1, 3}, {2, 3}}, {{1, 3}}, 2);
  CHECK_FALSE(brute_solve(direct).has_value());
  CHECK_FALSE(brute_solve(normalize(direct)).has_value());
}

TEST_CASE("normalize preserves the oracle answer and maps cuts back") {
  Rng rng(211);
  for (int trial = 0; trial < 60; ++trial) {
    DagInstance raw =
        random_raw_instance(rng, {.max_n = 8, .degenerate_pair_chance = 0.05});
    DagInstance norm = normalize(raw);
    std::optional<VertexSet> raw_answer = brute_solve(raw);
    std::optional<VertexSet> norm_answer = brute_solve(norm);
    CHECK(raw_answer.has_value() == norm_answer.has_value());
    if (norm_answer.has_value()) {
      VertexSet mapped = detail::set_intersection(*norm_answer, raw.vertex_ids());
      CHECK(is_multicut(raw, mapped));
      CHECK(static_cast<int>(mapped.size()) <= raw.budget());
    }
  }
}

TEST_CASE("kill removes the vertex and spends budget") {
  DagInstance inst = path_instance();
  DagInstance killed = kill(inst, 2);
  CHECK(killed.budget() == 0);
  CHECK_FALSE(killed.has_vertex(2));
  CHECK(killed.arcs() == std::vector<Arc>{{3, 4}});
  CHECK(potential(killed) == 0);  // strictly below the parent's 1

  CHECK_THROWS_AS(kill(inst, 1), Error);           // terminal
  CHECK_THROWS_AS(kill(kill(inst, 2), 3), Error);  // budget exhausted
  DagInstance dia = diamond_instance(2);
  DagInstance k = kill(dia, 2);
  CHECK(k.budget() == 1);
  CHECK(potential(k) == 1);  // (1+1)*1 - 1, strictly below 2
}

TEST_CASE("bypass splices a vertex out") {
  DagInstance inst = path_instance();
  DagInstance b3 = bypass(inst, 3);
  CHECK(b3.arcs() == std::vector<Arc>{{1, 2}, {2, 4}});
  DagInstance b23 = bypass(b3, 2);
  CHECK(b23.arcs() == std::vector<Arc>{{1, 4}});
  CHECK_THROWS_AS(bypass(inst, 4), Error);  // terminal

  // isolated vertex: bypassing is plain deletion
  DagInstance iso = DagInstance::build({1, 2, 3}, {{1, 3}}, {{1, 3}}, 1);
  DagInstance gone = bypass(iso, 2);
  CHECK_FALSE(gone.has_vertex(2));
  CHECK(gone.arcs() == std::vector<Arc>{{1, 3}});
}

TEST_CASE("bypass preserves the source map of the survivors") {
  Rng rng(223);
  for (int trial = 0; trial < 30; ++trial) {
    DagInstance inst = random_raw_instance(rng);
    VertexSet nonterm = inst.nonterminals();
    if (nonterm.empty()) continue;
    VertexId v = nonterm[rng() % nonterm.size()];
    SrcMap before = src_map(inst);
    DagInstance after = bypass(inst, v);
    SrcMap after_map = src_map(after);
    for (VertexId u : after.vertex_ids()) {
      CHECK(after_map.sources_of(u) == before.sources_of(u));
    }
    // potential never increases
    std::optional<int> phi_before = potential(inst);
    std::optional<int> phi_after = potential(after);
    if (phi_after.has_value()) {
      REQUIRE(phi_before.has_value());
      CHECK(*phi_after <= *phi_before);
    }
  }
}

TEST_CASE("torso examples") {
  DagInstance inst = path_instance();
  CHECK(torso(inst, {2, 3}).arcs() == std::vector<Arc>{{1, 4}});
  DagInstance same = torso(inst, {});
  CHECK(same.arcs() == inst.arcs());
  CHECK(same.vertex_ids() == inst.vertex_ids());
  CHECK_THROWS_AS(torso(inst, {1}), Error);  // terminal
}

TEST_CASE("torso equals any order of bypasses") {
  Rng rng(227);
  for (int trial = 0; trial < 40; ++trial) {
    DagInstance inst = random_raw_instance(rng, {.max_n = 8});
    VertexSet nonterm = inst.nonterminals();
    VertexSet x;
    for (VertexId v : nonterm) {
      if (rng() & 1) x.push_back(v);
    }
    DagInstance direct = torso(inst, x);

    std::vector<VertexId> order(x.begin(), x.end());
    std::shuffle(order.begin(), order.end(), rng);
    DagInstance folded = inst;
    for (VertexId v : order) folded = bypass(folded, v);

    CHECK(direct.vertex_ids() == folded.vertex_ids());
    CHECK(direct.arcs() == folded.arcs());
  }
}

TEST_CASE("torso keeps exactly the paths through the removed set") {
  Rng rng(229);
  for (int trial = 0; trial < 25; ++trial) {
    DagInstance inst = random_raw_instance(rng, {.max_n = 8});
    VertexSet x;
    for (VertexId v : inst.nonterminals()) {
      if ((rng() & 3) == 0) x.push_back(v);
    }
    DagInstance result = torso(inst, x);
    for (VertexId u : result.vertex_ids()) {
      for (VertexId w : result.vertex_ids()) {
        if (u == w) continue;
        // arc iff a u->w path with all internal vertices in x
        VertexSet uw{u, w};
        detail::sort_unique(uw);
        VertexSet blockers =
            detail::set_difference(detail::set_difference(inst.vertex_ids(), x), uw);
        bool path_through_x = detail::contains(reachable(inst, {u}, blockers), w);
        CHECK(result.has_arc(u, w) == path_through_x);
      }
    }
  }
}

TEST_CASE("degree_reduced rewires sources onto the closest mincuts") {
  // s=1 -> x1=2, s -> x2=3, x1 -> y=4, x2 -> y, y -> t=5
  DagInstance inst = DagInstance::build(
      {1, 2, 3, 4, 5}, {{1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 5}}, {{1, 5}}, 1);
  SeparatorReport rep = min_separator(inst, {1}, {5}, 1);
  CHECK(rep.closest_to_x == VertexSet{4});  // B_1 = {y}
  DagInstance star = degree_reduced(inst);
  CHECK(star.out_neighbors(1) == VertexSet{4});  // source arcs exactly {(s,y)}
  CHECK(src_map(star).sources_of(2).empty());
  CHECK(src_map(star).sources_of(3).empty());

  // path: B_1 = {2}, the graph is unchanged
  DagInstance path = path_instance();
  CHECK(min_separator(path, {1}, {4}, 1).closest_to_x == VertexSet{2});
  CHECK(degree_reduced(path).arcs() == path.arcs());

  // diamond: B_1 = {a,b}, unchanged
  DagInstance dia = diamond_instance(2);
  CHECK(degree_reduced(dia).arcs() == dia.arcs());

  CHECK_THROWS_AS(degree_reduced(diamond_instance(1)), Error);  // infeasible
}

TEST_CASE("degree_reduced satisfies the structural claims on random instances") {
  Rng rng(233);
  int checked = 0;
  while (checked < 60) {
    DagInstance raw = random_raw_instance(rng, {.max_n = 8});
    if (raw.has_degenerate_pair()) continue;
    DagInstance inst = normalize(raw);
    std::optional<int> phi = potential(inst);
    if (!phi.has_value()) continue;
    DagInstance star = degree_reduced(inst);

    // claim 1: sources' out-neighborhood is at most r*p
    VertexSet out_nb;
    for (VertexId s : star.sources()) {
      for (VertexId w : star.out_neighbors(s)) detail::insert_unique(out_nb, w);
    }
    CHECK(out_nb.size() <= static_cast<std::size_t>(star.pair_count()) *
                               static_cast<std::size_t>(star.budget()));

    // claim 2: each B_i is still the closest mincut in the reduced graph
    for (const TerminalPair& p : inst.terminal_pairs()) {
      SeparatorReport before = min_separator(inst, {p.source}, {p.sink});
      SeparatorReport after = min_separator(star, {p.source}, {p.sink});
      CHECK(before.size == after.size);
      CHECK(before.closest_to_x == after.closest_to_x);
    }

    // claim 3: potential is preserved
    CHECK(potential(star) == phi);

    // claim 5: source sets only shrink, and stay equal on rewired vertices
    SrcMap before = src_map(inst);
    SrcMap after = src_map(star);
    for (VertexId v : star.vertex_ids()) {
      CHECK(detail::is_subset(after.sources_of(v), before.sources_of(v)));
    }
    for (VertexId s : star.sources()) {
      for (VertexId v : star.out_neighbors(s)) {
        CHECK(after.sources_of(v) == before.sources_of(v));
      }
    }
    ++checked;
  }
}

TEST_CASE("degree_branch children push the mincut strictly up") {
  // the child adds (v, t) and bypasses v
  DagInstance inst = DagInstance::build(
      {1, 2, 3, 4, 5}, {{1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 5}}, {{1, 5}}, 1);
  DegreeBranchResult result = degree_branch(inst);
  REQUIRE(result.children.size() == 1);
  CHECK(result.children[0].pair_index == 0);
  CHECK(result.children[0].via_vertex == 4);
  CHECK(result.children[0].instance.arcs() ==
        std::vector<Arc>{{1, 2}, {1, 3}, {2, 5}, {3, 5}});
  SepSize child_cut = min_separator(result.children[0].instance, {1}, {5}, 3).size;
  CHECK(child_cut == SepSize::finite(2));  // strictly above the parent's 1

  // path: the single child gains a direct source->sink arc
  DegreeBranchResult path_result = degree_branch(path_instance());
  REQUIRE(path_result.children.size() == 1);
  CHECK(path_result.children[0].via_vertex == 2);
  CHECK(min_separator(path_result.children[0].instance, {1}, {4}, 2).size.is_infinite());

  // r=1 and |B_1| = p gives exactly p children
  DagInstance dia = diamond_instance(2);
  CHECK(degree_branch(dia).children.size() == 2);
}

TEST_CASE("degree_branch invariants on random normalized instances") {
  Rng rng(239);
  int checked = 0;
  while (checked < 50) {
    DagInstance raw = random_raw_instance(rng, {.max_n = 8});
    if (raw.has_degenerate_pair()) continue;
    DagInstance inst = normalize(raw);
    std::optional<int> phi = potential(inst);
    if (!phi.has_value()) continue;
    DegreeBranchResult result = degree_branch(inst);

    CHECK(result.children.size() <= static_cast<std::size_t>(inst.pair_count()) *
                                        static_cast<std::size_t>(inst.budget()));
    CHECK(potential(result.kept) == phi);

    for (const DegreeBranchChild& child : result.children) {
      CHECK(child.instance.budget() == inst.budget());
      CHECK(child.instance.terminal_pairs() == inst.terminal_pairs());
      // the branched pair's cut strictly increases
      const TerminalPair p =
          inst.terminal_pairs()[static_cast<std::size_t>(child.pair_index)];
      SepSize before = min_separator(inst, {p.source}, {p.sink}).size;
      SepSize after =
          min_separator(child.instance, {p.source}, {p.sink}, inst.budget() + 1).size;
      CHECK(after > before);
      // potential strictly decreases (infeasible children count as decreased)
      std::optional<int> child_phi = potential(child.instance);
      if (child_phi.has_value()) CHECK(*child_phi < *phi);
    }
    ++checked;
  }
}

TEST_CASE("degree_branch children cover exactly the parent's multicuts") {
  Rng rng(241);
  int checked = 0;
  while (checked < 30) {
    DagInstance raw = random_raw_instance(rng, {.max_n = 7});
    if (raw.has_degenerate_pair()) continue;
    DagInstance inst = normalize(raw);
    if (!potential(inst).has_value()) continue;
    DegreeBranchResult result = degree_branch(inst);

    std::optional<VertexSet> parent = brute_solve(inst);
    bool any_child_yes = brute_solve(result.kept).has_value();
    for (const DegreeBranchChild& child : result.children) {
      if (brute_solve(child.instance).has_value()) any_child_yes = true;
    }
    CHECK(parent.has_value() == any_child_yes);
    ++checked;
  }
}

}  // TEST_SUITE
