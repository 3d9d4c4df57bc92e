#include <doctest.h>

#include "dagmc/detail/sorted_set.hpp"
#include "test_support.hpp"

using namespace dagmc;
using namespace dagmc::testing;

TEST_SUITE("instance") {

TEST_CASE("build fixes a deterministic topological order") {
  DagInstance inst = path_instance();
  CHECK(inst.topo_order() == std::vector<VertexId>{1, 2, 3, 4});
  CHECK(inst.topo_pos(1) == 0);
  CHECK(inst.topo_pos(4) == 3);
}

TEST_CASE("build rejects cycles") {
  CHECK_THROWS_WITH_AS(DagInstance::build({1, 2}, {{1, 2}, {2, 1}}, {{1, 2}}, 1),
                       doctest::Contains("cycle"), Error);
  CHECK_THROWS_AS(DagInstance::build({1}, {{1, 1}}, {}, 0), Error);
}

TEST_CASE("build rejects dangling references") {
  try {
    DagInstance::build({1, 2, 3, 4}, {{1, 5}}, {}, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DanglingReference);
  }
  CHECK_THROWS_AS(DagInstance::build({1, 2}, {}, {{1, 7}}, 0), Error);
}

TEST_CASE("duplicate arcs collapse to one") {
  DagInstance inst = DagInstance::build({1, 2}, {{1, 2}, {1, 2}}, {{1, 2}}, 0);
  CHECK(inst.arcs().size() == 1);
}

TEST_CASE("equal-endpoint pairs are allowed but flagged") {
  DagInstance inst = DagInstance::build({1, 2}, {{1, 2}}, {{1, 1}}, 1);
  CHECK(inst.has_degenerate_pair());
  CHECK_FALSE(path_instance().has_degenerate_pair());
}

TEST_CASE("reachable") {
  DagInstance inst = path_instance();
  CHECK(reachable(inst, {1}, {}) == VertexSet{1, 2, 3, 4});
  CHECK(reachable(inst, {1}, {2}) == VertexSet{1});
  CHECK(reachable(inst, {4}, {}) == VertexSet{4});
  // deleted start vertices do not seed the search
  CHECK(reachable(inst, {2}, {2}).empty());
}

TEST_CASE("src_map") {
  DagInstance inst = path_instance();
  SrcMap map = src_map(inst);
  CHECK(map.sources_of(2) == VertexSet{1});
  CHECK(map.sources_of(3) == VertexSet{1});
  CHECK(map.sources_of(4) == VertexSet{1});

  // two sources feeding one vertex, plus an isolated vertex
  DagInstance two = DagInstance::build({1, 2, 3, 4, 5, 6},
                                       {{1, 3}, {2, 3}, {3, 4}, {3, 5}},
                                       {{1, 4}, {2, 5}}, 1);
  SrcMap tmap = src_map(two);
  CHECK(tmap.sources_of(3) == VertexSet{1, 2});
  CHECK(tmap.sources_of(6).empty());
}

TEST_CASE("vertices_with_src excludes terminals and matches exactly") {
  DagInstance inst = path_instance();
  CHECK(vertices_with_src(inst, {1}) == VertexSet{2, 3});
  CHECK(vertices_with_src(inst, {}).empty());

  DagInstance two = DagInstance::build({1, 2, 3, 4, 5, 6},
                                       {{1, 3}, {2, 6}, {3, 4}, {6, 4}, {6, 5}},
                                       {{1, 4}, {2, 5}}, 1);
  CHECK(vertices_with_src(two, {1}) == VertexSet{3});
  CHECK(vertices_with_src(two, {2}) == VertexSet{6});
}

TEST_CASE("lex_compare orders by topological rank with prefix rule") {
  DagInstance inst = path_instance();
  CHECK(lex_compare(inst, {2}, {3}) == LexOrder::Less);
  CHECK(lex_compare(inst, {2, 3}, {2, 3}) == LexOrder::Equal);
  CHECK(lex_compare(inst, {2}, {2, 3}) == LexOrder::Less);
  CHECK(lex_compare(inst, {3}, {2, 3}) == LexOrder::Greater);
}

TEST_CASE("lex_compare is a total order on random sets") {
  Rng rng(7);
  DagInstance inst = random_raw_instance(rng);
  std::uniform_int_distribution<int> pick(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    VertexSet a, b, c;
    for (VertexId v : inst.vertex_ids()) {
      if (pick(rng)) a.push_back(v);
      if (pick(rng)) b.push_back(v);
      if (pick(rng)) c.push_back(v);
    }
    CHECK(lex_compare(inst, a, a) == LexOrder::Equal);
    LexOrder ab = lex_compare(inst, a, b);
    LexOrder ba = lex_compare(inst, b, a);
    if (ab == LexOrder::Less) CHECK(ba == LexOrder::Greater);
    if (ab == LexOrder::Equal) CHECK(a == b);
    // transitivity
    if (ab != LexOrder::Greater && lex_compare(inst, b, c) != LexOrder::Greater) {
      CHECK(lex_compare(inst, a, c) != LexOrder::Greater);
    }
  }
}

TEST_CASE("is_multicut") {
  DagInstance inst = path_instance();
  CHECK(is_multicut(inst, {2}));
  CHECK_FALSE(is_multicut(inst, {}));
  CHECK_FALSE(is_multicut(inst, {1}));  // terminal in the cut
}

TEST_CASE("is_multicut agrees with per-pair reachability on random instances") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    DagInstance inst = random_raw_instance(rng);
    VertexSet nonterm = inst.nonterminals();
    VertexSet cut;
    for (VertexId v : nonterm) {
      if (rng() & 1) cut.push_back(v);
    }
    bool expected = true;
    for (const TerminalPair& p : inst.terminal_pairs()) {
      VertexSet reach = reachable(inst, {p.source}, cut);
      if (detail::contains(reach, p.sink)) expected = false;
    }
    CHECK(is_multicut(inst, cut) == expected);
  }
}

TEST_CASE("derive keeps the induced topological order") {
  Rng rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    DagInstance inst = random_raw_instance(rng);
    VertexSet keep = inst.terminals();
    for (VertexId v : inst.nonterminals()) {
      if (rng() & 1) detail::insert_unique(keep, v);
    }
    std::vector<Arc> arcs;
    for (const Arc& a : inst.arcs()) {
      if (detail::contains(keep, a.first) && detail::contains(keep, a.second)) {
        arcs.push_back(a);
      }
    }
    DagInstance child = inst.derive(keep, arcs, inst.budget());
    // the child's order is the parent's restricted to the survivors
    std::vector<VertexId> expected;
    for (VertexId v : inst.topo_order()) {
      if (detail::contains(keep, v)) expected.push_back(v);
    }
    CHECK(child.topo_order() == expected);
  }
}

TEST_CASE("src_map is monotone under vertex deletion") {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    DagInstance inst = random_raw_instance(rng);
    SrcMap before = src_map(inst);
    VertexSet drop;
    for (VertexId v : inst.nonterminals()) {
      if ((rng() & 3) == 0) drop.push_back(v);
    }
    VertexSet keep = detail::set_difference(inst.vertex_ids(), drop);
    std::vector<Arc> arcs;
    for (const Arc& a : inst.arcs()) {
      if (detail::contains(keep, a.first) && detail::contains(keep, a.second)) {
        arcs.push_back(a);
      }
    }
    DagInstance child = inst.derive(keep, arcs, inst.budget());
    SrcMap after = src_map(child);
    for (VertexId v : child.vertex_ids()) {
      CHECK(detail::is_subset(after.sources_of(v), before.sources_of(v)));
    }
  }
}

}  // TEST_SUITE
