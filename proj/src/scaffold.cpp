#include "crncex/bmc_encode.hpp"
#include "crncex/engine.hpp"

namespace crncex {

std::vector<Witness> scaffold_round(const WitnessCtmc& graph, const Property& prop,
                                    std::uint32_t j_max, std::uint32_t count,
                                    SolverSession& session) {
  std::vector<Witness> fragments;
  ScaffoldSpec spec;
  spec.target_species = prop.target_species;
  spec.target_value = prop.target_value;
  spec.recorded = graph.states();
  for (const State& x : graph.states()) {
    if (!prop.is_target(x)) spec.sources.push_back(x);
  }
  if (spec.sources.empty() || count == 0) return fragments;

  EdgeSet edges = graph.edge_states();
  for (std::uint32_t j = 1; j <= j_max && fragments.size() < count; ++j) {
    const UnrollContext ctx(graph.crn(), j);
    session.reset();
    session.assert_formula(encode_scaffold_frame(ctx, spec));
    while (fragments.size() < count) {
      CheckResult r = session.check_sat(encode_newness(ctx, edges));
      auto* model = std::get_if<SolverModel>(&r);
      if (!model) break;
      Witness frag = extract_witness(*model, ctx);
      validate_trace(frag, graph.crn());
      for (std::size_t i = 1; i < frag.states.size(); ++i) {
        edges.emplace(frag.states[i - 1], frag.states[i]);
      }
      fragments.push_back(std::move(frag));
    }
  }
  return fragments;
}

}  // namespace crncex
