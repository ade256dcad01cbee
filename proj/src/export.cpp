#include <string>

#include <fmt/format.h>
#include "json.hpp"

#include "crncex/witness_graph.hpp"

namespace crncex {
namespace {

std::string reaction_label(const std::vector<ReactionIndex>& reactions, double rate) {
  std::string names;
  for (std::size_t i = 0; i < reactions.size(); ++i) {
    if (i > 0) names += '+';
    names += fmt::format("R{}", reactions[i] + 1);
  }
  return fmt::format("{}:{:.6g}", names, rate);
}

}  // namespace

std::string export_dot(const WitnessCtmc& g, const Property& prop) {
  std::string out = "digraph witness_ctmc {\n  rankdir=LR;\n";
  for (NodeId id = 0; id < g.node_count(); ++id) {
    std::string attrs = fmt::format("label=\"{}\"", g.state(id).to_string());
    if (id == g.initial()) attrs += ", style=filled, fillcolor=palegreen";
    if (prop.is_target(g.state(id))) attrs += ", shape=doublecircle";
    out += fmt::format("  n{} [{}];\n", id, attrs);
  }
  if (g.sink_edge_count() > 0) out += "  sink [label=\"sink\", shape=box];\n";
  for (const auto& [key, edge] : g.edges()) {
    out += fmt::format("  n{} -> n{} [label=\"{}\"];\n", key.first, key.second,
                       reaction_label(edge.reactions, edge.rate));
  }
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const auto& s = g.sink_edge(id);
    if (s.rate > 0.0) {
      out += fmt::format("  n{} -> sink [label=\"{}\", style=dashed];\n", id,
                         reaction_label(s.reactions, s.rate));
    }
  }
  out += "}\n";
  return out;
}

std::string export_json(const WitnessCtmc& g, const Property& prop) {
  using nlohmann::json;
  json doc;
  json species = json::array();
  for (const Species& s : g.crn().species()) species.push_back(s.name);
  doc["species"] = species;

  const NodeId sink_id = g.node_count();
  const bool has_sink = g.sink_edge_count() > 0;
  json nodes = json::array();
  for (NodeId id = 0; id < g.node_count(); ++id) {
    nodes.push_back({{"id", id},
                     {"populations", g.state(id).vector()},
                     {"is_sink", false},
                     {"is_initial", id == g.initial()},
                     {"is_target", prop.is_target(g.state(id))}});
  }
  if (has_sink) {
    nodes.push_back({{"id", sink_id},
                     {"populations", nullptr},
                     {"is_sink", true},
                     {"is_initial", false},
                     {"is_target", false}});
  }
  doc["nodes"] = nodes;

  json edges = json::array();
  for (const auto& [key, edge] : g.edges()) {
    edges.push_back({{"src", key.first}, {"dst", key.second}, {"rate", edge.rate},
                     {"reactions", edge.reactions}});
  }
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const auto& s = g.sink_edge(id);
    if (s.rate > 0.0) {
      edges.push_back({{"src", id}, {"dst", sink_id}, {"rate", s.rate}, {"reactions", s.reactions}});
    }
  }
  doc["edges"] = edges;
  return doc.dump(2) + "\n";
}

std::string export_prism(const WitnessCtmc& g, const Property& prop) {
  const NodeId sink_id = g.node_count();
  std::string out;
  out += "// Witness CTMC; the highest state index is the absorbing sink.\n";
  out += fmt::format("// Check with: P=? [ true U<={} \"target\" ]\n", prop.time_bound);
  out += "ctmc\n\nmodule witness\n";
  out += fmt::format("  s : [0..{}] init {};\n", sink_id, g.initial());

  std::vector<std::string> commands(g.node_count());
  for (const auto& [key, edge] : g.edges()) {
    std::string& c = commands[key.first];
    if (!c.empty()) c += " + ";
    c += fmt::format("{}:(s'={})", edge.rate, key.second);
  }
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const auto& s = g.sink_edge(id);
    if (s.rate > 0.0) {
      std::string& c = commands[id];
      if (!c.empty()) c += " + ";
      c += fmt::format("{}:(s'={})", s.rate, sink_id);
    }
  }
  for (NodeId id = 0; id < g.node_count(); ++id) {
    if (!commands[id].empty()) out += fmt::format("  [] s={} -> {};\n", id, commands[id]);
  }
  out += "endmodule\n\n";

  std::string targets;
  for (NodeId id = 0; id < g.node_count(); ++id) {
    if (!prop.is_target(g.state(id))) continue;
    if (!targets.empty()) targets += " | ";
    targets += fmt::format("s={}", id);
  }
  out += fmt::format("label \"target\" = {};\n", targets.empty() ? "false" : targets);
  return out;
}

}  // namespace crncex
