#include "cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "crncex/engine.hpp"
#include "crncex/errors.hpp"
#include "crncex/oracle.hpp"
#include "crncex/parser.hpp"
#include "crncex/witness_graph.hpp"

namespace crncex::cli {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("fnv1a64:{:016x}", h);
}

/// "S2=70" -> (species index, value).
std::pair<SpeciesIndex, Population> parse_target(const Crn& crn, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw ConfigError(fmt::format("malformed target '{}', expected <species>=<int>", spec));
  }
  const std::string name = spec.substr(0, eq);
  const auto species = crn.find_species(name);
  if (!species) throw ConfigError(fmt::format("unknown target species '{}'", name));
  Population value = 0;
  try {
    std::size_t used = 0;
    value = std::stoll(spec.substr(eq + 1), &used);
    if (used != spec.size() - eq - 1) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("malformed target population in '{}'", spec));
  }
  if (value < 0) throw ConfigError("target population must be non-negative");
  return {*species, value};
}

struct CheckOptions {
  std::string model;
  std::string target;
  double time = 0.0;
  double prob = 0.0;
  EngineConfig engine;
  std::string out_dir = "crn-cex-out";
  std::vector<std::string> emit = {"json", "dot"};
};

json config_json(const EngineConfig& c) {
  return {{"dnc", c.delta},
          {"dnc_segment_cap", c.dnc_segment_cap},
          {"scaffold_trigger", c.scaffold_trigger},
          {"scaffold_j", c.scaffold_j_max},
          {"scaffold_count", c.scaffold_count},
          {"recheck_growth", c.recheck_growth},
          {"max_bound", c.max_bound},
          {"budget_secs", c.wall_clock_budget},
          {"solver", c.solver_command},
          {"solver_timeout", c.solver_timeout},
          {"epsilon", c.transient.epsilon}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

int run_check(const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(opts.model);
  const Crn crn = parse_crn(text);
  const auto [species, value] = parse_target(crn, opts.target);
  const Property prop(opts.prob, opts.time, species, value);

  EngineConfig config = opts.engine;
  if (const char* env = std::getenv("CRN_CEX_SOLVER"); env && *env) config.solver_command = env;

  json report;
  report["input_digest"] = digest(text);
  report["model"] = opts.model;
  report["property"] = {{"target", opts.target}, {"time", opts.time}, {"threshold", opts.prob}};
  report["config"] = config_json(config);

  const CexResult result = generate_counterexample(crn, prop, config);
  const WitnessCtmc& g = result.ctmc;
  report["outcome"] = result.success() ? "counterexample" : "budget-exhausted";
  report["probability"] = result.probability;
  report["cex_size"] = g.size();
  report["nodes"] = g.node_count();
  report["edges"] = g.edge_count();
  report["sink_edges"] = g.sink_edge_count();
  report["witness_count"] = result.witness_count;
  report["fragment_count"] = result.fragment_count;
  report["iterations"] = result.iterations;
  report["final_bound"] = result.final_bound;
  std::size_t longest = 0;
  for (const Witness& w : result.witnesses) longest = std::max(longest, w.length());
  report["longest_witness"] = longest;
  report["stop_reason"] = result.stop_reason;
  report["timings"] = {{"total", result.elapsed},
                       {"solving", result.times.solving},
                       {"probability", result.times.probability},
                       {"graph", result.times.graph}};

  const std::filesystem::path dir(opts.out_dir);
  std::filesystem::create_directories(dir);
  for (const std::string& kind : opts.emit) {
    if (kind == "json") {
      write_file(dir / "witness_ctmc.json", export_json(g, prop));
    } else if (kind == "dot") {
      write_file(dir / "witness_ctmc.dot", export_dot(g, prop));
    } else if (kind == "prism") {
      write_file(dir / "witness_ctmc.prism", export_prism(g, prop));
    } else {
      err << fmt::format("warning: unknown --emit kind '{}' ignored\n", kind);
    }
  }
  write_file(dir / "report.json", report.dump(2) + "\n");

  out << fmt::format("outcome: {}\n", report["outcome"].get<std::string>());
  out << fmt::format("probability: {:.6g}\n", result.probability);
  out << fmt::format("cex size: {} ({} states, {} transitions, {} sink transitions)\n", g.size(),
                     g.node_count(), g.edge_count(), g.sink_edge_count());
  out << fmt::format("witnesses: {} (+{} scaffold fragments), longest {}\n", result.witness_count,
                     result.fragment_count, longest);
  out << fmt::format("time: {:.2f}s (solving {:.2f}s, probability {:.2f}s)\n", result.elapsed,
                     result.times.solving, result.times.probability);
  out << fmt::format("artifacts: {}\n", dir.string());
  return result.success() ? 0 : 2;
}

FiniteCtmc load_exported_ctmc(const std::string& path) {
  const json doc = json::parse(read_file(path));
  const auto& nodes = doc.at("nodes");
  const auto n = static_cast<Eigen::Index>(nodes.size());
  std::vector<bool> target(nodes.size(), false);
  Eigen::Index initial = -1;
  for (const auto& node : nodes) {
    const auto id = node.at("id").get<Eigen::Index>();
    if (id < 0 || id >= n) throw Error(fmt::format("node id {} out of range", id));
    target[static_cast<std::size_t>(id)] = node.at("is_target").get<bool>();
    if (node.at("is_initial").get<bool>()) initial = id;
  }
  if (initial < 0) throw Error("exported CTMC has no initial node");
  std::vector<FiniteCtmc::Triplet> rates;
  for (const auto& e : doc.at("edges")) {
    rates.emplace_back(e.at("src").get<Eigen::Index>(), e.at("dst").get<Eigen::Index>(),
                       e.at("rate").get<double>());
  }
  return FiniteCtmc(n, rates, initial, std::move(target));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counterexample generation for chemical reaction networks", "crn-cex"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "search for a counterexample to P<=p [true U<=T S=theta]");
  check_cmd->add_option("model", check.model, "model file")->required();
  check_cmd->add_option("--target", check.target, "target population, <species>=<int>")->required();
  check_cmd->add_option("--time", check.time, "time bound T")->required();
  check_cmd->add_option("--prob", check.prob, "probability threshold p")->required();
  check_cmd->add_option("--dnc", check.engine.delta, "divide-and-conquer step (0 disables)");
  check_cmd->add_option("--dnc-cap", check.engine.dnc_segment_cap,
                        "largest unrolling per segment (default 10 x step)");
  check_cmd->add_option("--scaffold-trigger", check.engine.scaffold_trigger,
                        "witnesses between scaffold rounds");
  check_cmd->add_option("--scaffold-j", check.engine.scaffold_j_max,
                        "longest scaffold fragment (0 disables scaffolding)");
  check_cmd->add_option("--scaffold-count", check.engine.scaffold_count, "fragments per round");
  check_cmd->add_option("--recheck-growth", check.engine.recheck_growth,
                        "graph growth between probability evaluations");
  check_cmd->add_option("--max-bound", check.engine.max_bound, "largest BMC bound");
  check_cmd->add_option("--budget-secs", check.engine.wall_clock_budget, "wall-clock budget");
  check_cmd->add_option("--solver", check.engine.solver_command,
                        "solver command (CRN_CEX_SOLVER overrides)");
  check_cmd->add_option("--solver-timeout", check.engine.solver_timeout,
                        "seconds allowed per solver check");
  check_cmd->add_option("--out", check.out_dir, "artifact directory");
  check_cmd->add_option("--emit", check.emit, "artifacts to write: dot,json,prism")->delimiter(',');

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force references for small models");
  oracle_cmd->require_subcommand(1);
  std::string paths_model;
  std::string paths_target;
  std::uint32_t paths_k = 0;
  auto* paths_cmd = oracle_cmd->add_subcommand("paths", "count loop-free witnesses of length k");
  paths_cmd->add_option("model", paths_model, "model file")->required();
  paths_cmd->add_option("--target", paths_target, "<species>=<int>")->required();
  paths_cmd->add_option("--k", paths_k, "witness length")->required();

  std::string prob_file;
  double prob_time = 0.0;
  std::string prob_method = "expm";
  auto* prob_cmd = oracle_cmd->add_subcommand("prob", "reach probability of an exported witness CTMC");
  prob_cmd->add_option("ctmc", prob_file, "JSON export of a witness CTMC")->required();
  prob_cmd->add_option("--time", prob_time, "time bound")->required();
  prob_cmd->add_option("--method", prob_method, "expm or uniformization")
      ->check(CLI::IsMember({"expm", "uniformization"}));

  std::vector<std::string> argv_store = args;
  std::vector<const char*> argv;
  argv.push_back("crn-cex");
  for (const std::string& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (check_cmd->parsed()) return run_check(check, out, err);
    if (paths_cmd->parsed()) {
      const Crn crn = parse_crn(read_file(paths_model));
      const auto [species, value] = parse_target(crn, paths_target);
      const Property prop(1.0, 1.0, species, value);
      out << enumerate_witnesses(crn, prop, paths_k).size() << "\n";
      return 0;
    }
    if (prob_cmd->parsed()) {
      const FiniteCtmc ctmc = load_exported_ctmc(prob_file);
      const double p = prob_method == "expm" ? expm_reach_probability(ctmc, prob_time)
                                             : reach_probability(ctmc, prob_time);
      out << fmt::format("{:.6g}\n", p);
      return 0;
    }
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    if (!e.solver_stderr().empty()) err << e.solver_stderr() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace crncex::cli
