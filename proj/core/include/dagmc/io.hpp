#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "dagmc/gadgets.hpp"
#include "dagmc/instance.hpp"
#include "dagmc/oracle.hpp"

namespace dagmc {

// Text formats, all 1-indexed and line oriented:
//   vertex instances    p dagmc <n> <r> <p>   then `a <u> <v>` and `t <s> <t>`
//   weighted instances  p dagmc-w <n> <r> <p> then `a <u> <v> <w|inf>` and `t`
//   undirected graphs   p graph <n> <m>       then `e <u> <v>`
//   solutions           s YES|NO              then `v <id>` lines
// Comment lines start with `c`. The header declares n as the largest vertex
// id; every id in 1..n is a vertex. Rendering is canonical and byte-stable:
// header, sorted arc lines, pair lines in order.

DagInstance parse_vertex_instance(const std::string& text);
WeightedArcInstance parse_weighted_instance(const std::string& text);
UndirectedGraph parse_undirected_graph(const std::string& text);

std::string render_vertex_instance(const DagInstance& inst);
std::string render_weighted_instance(const WeightedArcInstance& inst);
std::string render_undirected_graph(const UndirectedGraph& g);

// Solution files: `s YES` plus cut vertices in topological order, or `s NO`.
std::string render_solution(const DagInstance& inst,
                            const std::optional<VertexSet>& cut);
std::optional<VertexSet> parse_solution(const std::string& text);

// First header token of the text ("dagmc", "dagmc-w", "graph"), for
// dispatching; ParseError when there is no header.
std::string sniff_format(const std::string& text);

}  // namespace dagmc
