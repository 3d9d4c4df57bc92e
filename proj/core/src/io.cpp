#include "dagmc/io.hpp"

#include <algorithm>
#include <sstream>

#include "dagmc/detail/sorted_set.hpp"

namespace dagmc {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& message) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message);
}

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream stream(text);
  std::string raw;
  int number = 0;
  while (std::getline(stream, raw)) {
    ++number;
    std::istringstream ls(raw);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens[0] == "c") continue;
    lines.push_back({number, std::move(tokens)});
  }
  return lines;
}

int parse_int(const Line& line, std::size_t pos, const std::string& what) {
  const std::string& tok = line.tokens[pos];
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &used);
  } catch (const std::exception&) {
    parse_fail(line.number, "expected " + what + ", got '" + tok + "'");
  }
  if (used != tok.size()) {
    parse_fail(line.number, "expected " + what + ", got '" + tok + "'");
  }
  return value;
}

int parse_id(const Line& line, std::size_t pos, int n, const std::string& what) {
  int v = parse_int(line, pos, what);
  if (v < 1 || v > n) {
    parse_fail(line.number, what + " " + std::to_string(v) + " out of range 1.." +
                                std::to_string(n));
  }
  return v;
}

struct Header {
  std::string kind;
  std::vector<int> fields;
  int line;
};

Header take_header(std::vector<Line>& lines, const std::string& expected_kind,
                   std::size_t field_count) {
  if (lines.empty()) parse_fail(1, "missing 'p " + expected_kind + "' header");
  Line head = lines.front();
  if (head.tokens[0] != "p") {
    parse_fail(head.number, "expected 'p " + expected_kind + "' header");
  }
  if (head.tokens.size() != field_count + 2 || head.tokens[1] != expected_kind) {
    parse_fail(head.number, "malformed 'p " + expected_kind + "' header");
  }
  Header h;
  h.kind = head.tokens[1];
  h.line = head.number;
  for (std::size_t i = 0; i < field_count; ++i) {
    h.fields.push_back(parse_int(head, i + 2, "header field"));
    if (h.fields.back() < 0) parse_fail(head.number, "negative header field");
  }
  lines.erase(lines.begin());
  return h;
}

}  // namespace

std::string sniff_format(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "p" || lines[0].tokens.size() < 2) {
    parse_fail(lines.empty() ? 1 : lines[0].number, "missing 'p' header");
  }
  return lines[0].tokens[1];
}

DagInstance parse_vertex_instance(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  Header h = take_header(lines, "dagmc", 3);
  const int n = h.fields[0], r = h.fields[1], p = h.fields[2];

  std::vector<Arc> arcs;
  std::vector<TerminalPair> pairs;
  for (const Line& line : lines) {
    if (line.tokens[0] == "a") {
      if (line.tokens.size() != 3) parse_fail(line.number, "arc lines are 'a <u> <v>'");
      arcs.emplace_back(parse_id(line, 1, n, "arc tail"),
                        parse_id(line, 2, n, "arc head"));
    } else if (line.tokens[0] == "t") {
      if (line.tokens.size() != 3) parse_fail(line.number, "pair lines are 't <s> <t>'");
      pairs.push_back({parse_id(line, 1, n, "pair source"),
                       parse_id(line, 2, n, "pair sink")});
    } else {
      parse_fail(line.number, "unknown line type '" + line.tokens[0] + "'");
    }
  }
  if (static_cast<int>(pairs.size()) != r) {
    parse_fail(h.line, "header declares " + std::to_string(r) + " pairs but " +
                           std::to_string(pairs.size()) + " 't' lines follow");
  }
  VertexSet vertices;
  for (VertexId v = 1; v <= n; ++v) vertices.push_back(v);
  return DagInstance::build(std::move(vertices), std::move(arcs), std::move(pairs), p);
}

WeightedArcInstance parse_weighted_instance(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  Header h = take_header(lines, "dagmc-w", 3);
  const int n = h.fields[0], r = h.fields[1], p = h.fields[2];

  std::vector<WeightedArc> arcs;
  std::vector<TerminalPair> pairs;
  for (const Line& line : lines) {
    if (line.tokens[0] == "a") {
      if (line.tokens.size() != 4) {
        parse_fail(line.number, "arc lines are 'a <u> <v> <w|inf>'");
      }
      WeightedArc arc;
      arc.from = parse_id(line, 1, n, "arc tail");
      arc.to = parse_id(line, 2, n, "arc head");
      if (line.tokens[3] == "inf") {
        arc.weight = ArcWeight::infinite();
      } else {
        int w = parse_int(line, 3, "arc weight");
        if (w < 1) parse_fail(line.number, "arc weight must be positive");
        arc.weight = ArcWeight::finite(w);
      }
      arcs.push_back(arc);
    } else if (line.tokens[0] == "t") {
      if (line.tokens.size() != 3) parse_fail(line.number, "pair lines are 't <s> <t>'");
      pairs.push_back({parse_id(line, 1, n, "pair source"),
                       parse_id(line, 2, n, "pair sink")});
    } else {
      parse_fail(line.number, "unknown line type '" + line.tokens[0] + "'");
    }
  }
  if (static_cast<int>(pairs.size()) != r) {
    parse_fail(h.line, "header declares " + std::to_string(r) + " pairs but " +
                           std::to_string(pairs.size()) + " 't' lines follow");
  }
  VertexSet vertices;
  for (VertexId v = 1; v <= n; ++v) vertices.push_back(v);
  return WeightedArcInstance::build(std::move(vertices), std::move(arcs),
                                    std::move(pairs), p);
}

UndirectedGraph parse_undirected_graph(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  Header h = take_header(lines, "graph", 2);
  const int n = h.fields[0], m = h.fields[1];

  std::vector<std::pair<int, int>> edges;
  for (const Line& line : lines) {
    if (line.tokens[0] != "e" || line.tokens.size() != 3) {
      parse_fail(line.number, "edge lines are 'e <u> <v>'");
    }
    // 1-indexed in files, 0-indexed internally
    edges.emplace_back(parse_id(line, 1, n, "edge endpoint") - 1,
                       parse_id(line, 2, n, "edge endpoint") - 1);
  }
  if (static_cast<int>(edges.size()) != m) {
    parse_fail(h.line, "header declares " + std::to_string(m) + " edges but " +
                           std::to_string(edges.size()) + " 'e' lines follow");
  }
  return UndirectedGraph::build(n, std::move(edges));
}

std::string render_vertex_instance(const DagInstance& inst) {
  std::ostringstream out;
  out << "p dagmc " << inst.max_vertex_id() << ' ' << inst.pair_count() << ' '
      << inst.budget() << '\n';
  for (const Arc& a : inst.arcs()) out << "a " << a.first << ' ' << a.second << '\n';
  for (const TerminalPair& p : inst.terminal_pairs()) {
    out << "t " << p.source << ' ' << p.sink << '\n';
  }
  return out.str();
}

std::string render_weighted_instance(const WeightedArcInstance& inst) {
  std::ostringstream out;
  const int n = inst.vertices.empty() ? 0 : inst.vertices.back();
  out << "p dagmc-w " << n << ' ' << inst.pairs.size() << ' ' << inst.budget << '\n';
  for (const WeightedArc& a : inst.arcs) {
    out << "a " << a.from << ' ' << a.to << ' ';
    if (a.weight.is_infinite()) {
      out << "inf";
    } else {
      out << a.weight.value();
    }
    out << '\n';
  }
  for (const TerminalPair& p : inst.pairs) {
    out << "t " << p.source << ' ' << p.sink << '\n';
  }
  return out.str();
}

std::string render_undirected_graph(const UndirectedGraph& g) {
  std::ostringstream out;
  out << "p graph " << g.n << ' ' << g.edges.size() << '\n';
  for (const auto& [u, v] : g.edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

std::string render_solution(const DagInstance& inst,
                            const std::optional<VertexSet>& cut) {
  std::ostringstream out;
  if (!cut.has_value()) {
    out << "s NO\n";
    return out.str();
  }
  out << "s YES\n";
  VertexSet by_topo = *cut;
  std::sort(by_topo.begin(), by_topo.end(), [&](VertexId a, VertexId b) {
    return inst.topo_pos(a) < inst.topo_pos(b);
  });
  for (VertexId v : by_topo) out << "v " << v << '\n';
  return out.str();
}

std::optional<VertexSet> parse_solution(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "s" || lines[0].tokens.size() != 2) {
    parse_fail(lines.empty() ? 1 : lines[0].number, "expected 's YES' or 's NO'");
  }
  const std::string& verdict = lines[0].tokens[1];
  if (verdict == "NO") {
    if (lines.size() != 1) parse_fail(lines[1].number, "unexpected line after 's NO'");
    return std::nullopt;
  }
  if (verdict != "YES") parse_fail(lines[0].number, "expected 's YES' or 's NO'");
  VertexSet cut;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens[0] != "v" || line.tokens.size() != 2) {
      parse_fail(line.number, "cut lines are 'v <id>'");
    }
    int v = parse_int(line, 1, "cut vertex");
    if (v < 1) parse_fail(line.number, "cut vertex must be positive");
    cut.push_back(v);
  }
  detail::sort_unique(cut);
  return cut;
}

}  // namespace dagmc
