#include "dagmc/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dagmc/io.hpp"
#include "dagmc/solver.hpp"
#include "dagmc/transforms.hpp"

namespace dagmc {

namespace {

std::string slurp(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) {
    throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooLarge:
    case ErrorCode::ExhaustiveLimitExceeded:
    case ErrorCode::ExpansionTooLarge:
      return 3;
    case ErrorCode::VerificationFailed:
    case ErrorCode::InternalError:
      return 1;
    default:
      return 2;  // parse / input / usage problems
  }
}

nlohmann::json trace_json(const SolveTrace& trace) {
  nlohmann::json stages = nlohmann::json::object();
  for (const auto& [stage, count] : trace.children_per_stage) stages[stage] = count;
  nlohmann::json j{
      {"nodes_expanded", trace.nodes_expanded},
      {"memo_hits", trace.memo_hits},
      {"max_depth", trace.max_depth},
      {"subcase_count", trace.subcase_count},
      {"shadow_subcase_count", trace.shadow_subcase_count},
      {"children_per_stage", stages},
      {"shadow_family_sizes", trace.shadow_family_sizes},
      {"dedup_skipped", trace.dedup_skipped},
      {"potential_violations", trace.potential_violations},
      {"depth_violations", trace.depth_violations},
  };
  if (trace.root_potential.has_value()) {
    j["root_potential"] = *trace.root_potential;
  } else {
    j["root_potential"] = nullptr;
  }
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"exact multicut solving in directed acyclic graphs"};
  app.require_subcommand(1);

  std::string file = "-", cut_file, graph_file;
  std::string shadow_name = "exhaustive";
  std::uint64_t seed = 0;
  int rand_iters = 64, threads = 1, exhaustive_limit = 16, target = 0;
  bool stats = false;

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a vertex instance");
  solve_cmd->add_option("file", file, "instance file or '-'");
  solve_cmd->add_option("--shadow", shadow_name, "exhaustive|random|oracle")
      ->check(CLI::IsMember({"exhaustive", "random", "oracle"}));
  solve_cmd->add_option("--seed", seed, "seed for the random shadow strategy");
  solve_cmd->add_option("--rand-iters", rand_iters, "random shadow sets per step");
  solve_cmd->add_option("--threads", threads, "worker threads for the root subtrees");
  solve_cmd->add_option("--exhaustive-limit", exhaustive_limit,
                        "nonterminal limit for materialized exhaustive families");
  solve_cmd->add_flag("--stats", stats, "emit a JSON stats object on stderr");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force a vertex instance");
  oracle_cmd->add_option("file", file, "instance file or '-'");

  CLI::App* oracle_w_cmd =
      app.add_subcommand("oracle-w", "brute-force a weighted arc instance");
  oracle_w_cmd->add_option("file", file, "instance file or '-'");

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a cut against an instance");
  verify_cmd->add_option("instance", file, "instance file or '-'")->required();
  verify_cmd->add_option("cut", cut_file, "solution file")->required();

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate reduction instances");
  gen_cmd->require_subcommand(1);
  CLI::App* gen_clique_cmd =
      gen_cmd->add_subcommand("clique", "clique -> weighted multicut instance");
  gen_clique_cmd->add_option("--graph", graph_file, "undirected graph file or '-'")
      ->required();
  gen_clique_cmd->add_option("--clique", target, "clique size t")->required();
  CLI::App* gen_maxcut_cmd =
      gen_cmd->add_subcommand("maxcut", "max-cut -> skew multicut instance");
  gen_maxcut_cmd->add_option("--graph", graph_file, "undirected graph file or '-'")
      ->required();
  gen_maxcut_cmd->add_option("--cut", target, "cut size t")->required();

  CLI::App* skew_cmd =
      app.add_subcommand("skew2pairs", "reduce a skew instance to two pairs");
  skew_cmd->add_option("file", file, "weighted instance file or '-'");

  CLI::App* expand_cmd =
      app.add_subcommand("expand", "expand weighted arcs to a vertex instance");
  expand_cmd->add_option("file", file, "weighted instance file or '-'");

  CLI::App* normalize_cmd =
      app.add_subcommand("normalize", "normalize a vertex instance");
  normalize_cmd->add_option("file", file, "instance file or '-'");

  try {
    // CLI11's vector overload consumes the arguments back to front
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (solve_cmd->parsed()) {
      DagInstance inst = parse_vertex_instance(slurp(file, in));
      SolveOptions options;
      if (shadow_name == "exhaustive") {
        options.shadow = ShadowStrategy::exhaustive(exhaustive_limit);
      } else if (shadow_name == "random") {
        options.shadow = ShadowStrategy::randomized(seed, rand_iters);
      } else {
        options.shadow = ShadowStrategy::oracle_assisted();
      }
      options.threads = threads;
      SolveOutcome outcome = solve(inst, options);
      out << render_solution(inst, outcome.cut);
      if (stats) {
        nlohmann::json j = trace_json(outcome.trace);
        j["answer"] = outcome.yes() ? "YES" : "NO";
        if (outcome.yes()) j["cut_size"] = outcome.cut->size();
        j["shadow_strategy"] = shadow_name;
        j["seed"] = seed;
        j["threads"] = threads;
        err << j.dump() << '\n';
      }
      return 0;
    }
    if (oracle_cmd->parsed()) {
      DagInstance inst = parse_vertex_instance(slurp(file, in));
      out << render_solution(inst, brute_solve(inst));
      return 0;
    }
    if (oracle_w_cmd->parsed()) {
      WeightedArcInstance inst = parse_weighted_instance(slurp(file, in));
      out << (brute_solve_weighted_arcs(inst) ? "s YES\n" : "s NO\n");
      return 0;
    }
    if (verify_cmd->parsed()) {
      DagInstance inst = parse_vertex_instance(slurp(file, in));
      std::optional<VertexSet> cut = parse_solution(slurp(cut_file, in));
      if (!cut.has_value()) {
        throw Error(ErrorCode::ParseError, "cut file contains 's NO', nothing to verify");
      }
      out << (verify(inst, *cut) ? "s VALID\n" : "s INVALID\n");
      return 0;
    }
    if (gen_clique_cmd->parsed()) {
      UndirectedGraph g = parse_undirected_graph(slurp(graph_file, in));
      out << render_weighted_instance(gen_clique_instance(g, target));
      return 0;
    }
    if (gen_maxcut_cmd->parsed()) {
      UndirectedGraph g = parse_undirected_graph(slurp(graph_file, in));
      out << render_weighted_instance(gen_maxcut_skew_instance(g, target));
      return 0;
    }
    if (skew_cmd->parsed()) {
      WeightedArcInstance inst = parse_weighted_instance(slurp(file, in));
      out << render_weighted_instance(skew_to_two_pairs(inst));
      return 0;
    }
    if (expand_cmd->parsed()) {
      WeightedArcInstance inst = parse_weighted_instance(slurp(file, in));
      out << render_vertex_instance(expand_to_vertex_instance(inst));
      return 0;
    }
    if (normalize_cmd->parsed()) {
      DagInstance inst = parse_vertex_instance(slurp(file, in));
      out << render_vertex_instance(normalize(inst));
      return 0;
    }
  } catch (const Error& e) {
    err << error_code_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  err << "no subcommand executed\n";
  return 2;
}

}  // namespace dagmc
