#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crncex/crn.hpp"
#include "crncex/smt.hpp"
#include "crncex/transient.hpp"
#include "crncex/witness.hpp"
#include "crncex/witness_graph.hpp"

namespace crncex {

struct EngineConfig {
  /// Divide-and-conquer step; 0 disables it.
  std::uint32_t delta = 0;
  /// Upper bound on a single segment's unrolling; 0 means 10 * delta.
  std::uint32_t dnc_segment_cap = 0;
  /// Witnesses found between scaffold rounds.
  std::uint32_t scaffold_trigger = 3;
  /// Longest scaffold fragment; 0 disables scaffolding.
  std::uint32_t scaffold_j_max = 3;
  std::uint32_t scaffold_count = 50;
  /// Graph growth (nodes + edges) between probability evaluations.
  std::uint32_t recheck_growth = 25;
  std::uint32_t max_bound = 500;
  double wall_clock_budget = 1800.0;
  std::string solver_command = "z3 -in";
  double solver_timeout = 300.0;
  TransientOptions transient;

  /// Throws ConfigError on invalid combinations for the given model and property.
  void validate(const Crn& crn, const Property& prop) const;
};

enum class Outcome { Counterexample, BudgetExhausted };

struct PhaseTimes {
  double solving = 0.0;
  double probability = 0.0;
  double graph = 0.0;
};

struct CexResult {
  Outcome outcome = Outcome::BudgetExhausted;
  WitnessCtmc ctmc;
  double probability = 0.0;
  std::size_t witness_count = 0;
  std::size_t fragment_count = 0;
  std::size_t iterations = 0;
  std::uint32_t final_bound = 0;
  double elapsed = 0.0;
  PhaseTimes times;
  /// Probability after every evaluation, in order.
  std::vector<double> probability_history;
  /// Every full witness added to the graph (main BMC flow and divide-and-conquer).
  std::vector<Witness> witnesses;
  std::string stop_reason;

  bool success() const { return outcome == Outcome::Counterexample; }
};

/// Observer invoked after each probability evaluation (graph snapshot, probability).
using EvaluationObserver = std::function<void(const WitnessCtmc&, double)>;

/// Searches for a set of witnesses whose witness CTMC reaches the target within the time bound
/// with probability above prop.threshold. Returns BudgetExhausted with the partial graph when the
/// bound cap or the wall-clock budget is hit first.
CexResult generate_counterexample(const Crn& crn, const Property& prop, const EngineConfig& config,
                                  const EvaluationObserver& observer = {});

/// All loop-free witnesses of exactly k transitions, by solving and excluding until unsat.
/// Throws ResourceError once more than `limit` witnesses were found.
std::vector<Witness> enumerate_bmc_witnesses(const Crn& crn, const Property& prop, std::uint32_t k,
                                             SolverSession& session, std::size_t limit = 100'000);

/// Divide-and-conquer witness search. Each call returns a witness not returned before (the first
/// segment is always new) or nullopt once some segment cannot be found within the cap.
class DncSearch {
 public:
  DncSearch(const Crn& crn, const Property& prop, std::uint32_t delta, std::uint32_t segment_cap,
            SolverSession& session);

  std::optional<Witness> next();
  std::uint32_t segment_count() const { return segments_; }

 private:
  struct SegmentHistory {
    std::uint32_t bound = 0;
    std::vector<Witness> found;
  };

  std::optional<Witness> find_segment(const State& start, Population goal);

  const Crn& crn_;
  SpeciesIndex species_;
  Population origin_;
  std::int64_t direction_;
  std::uint32_t delta_;
  std::uint32_t segments_;
  std::uint32_t cap_;
  SolverSession& session_;
  std::map<std::pair<State, Population>, SegmentHistory> history_;
};

/// One-shot form: the first divide-and-conquer witness, or nullopt.
std::optional<Witness> find_witness_dnc(const Crn& crn, const Property& prop, std::uint32_t delta,
                                        std::uint32_t per_segment_bound_cap,
                                        SolverSession& session);

/// Up to `count` fragments of length 1..j_max from the graph's non-target states to its recorded
/// states or any target state, each adding at least one node or edge relative to the graph and
/// the fragments before it. Lengths are tried in increasing order.
std::vector<Witness> scaffold_round(const WitnessCtmc& graph, const Property& prop,
                                    std::uint32_t j_max, std::uint32_t count,
                                    SolverSession& session);

}  // namespace crncex
