#include "crncex/engine.hpp"

#include <fmt/format.h>

#include "crncex/bmc_encode.hpp"
#include "crncex/errors.hpp"

namespace crncex {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::chrono::milliseconds to_millis(double seconds) {
  return std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000.0));
}

}  // namespace

void EngineConfig::validate(const Crn& crn, const Property& prop) const {
  if (prop.target_species >= crn.species_count()) {
    throw ConfigError("target species is not part of the model");
  }
  if (delta > 0) {
    const Population gap = prop.target_value - crn.initial()[prop.target_species];
    if (gap % static_cast<Population>(delta) != 0) {
      throw ConfigError(fmt::format("divide-and-conquer step {} does not divide {} - {} = {}",
                                    delta, prop.target_value,
                                    crn.initial()[prop.target_species], gap));
    }
    if (dnc_segment_cap != 0 && dnc_segment_cap < delta) {
      throw ConfigError("segment cap must be at least the divide-and-conquer step");
    }
  }
  if (scaffold_j_max > 0 && (scaffold_trigger == 0 || scaffold_count == 0)) {
    throw ConfigError("scaffold trigger and fragment count must be positive");
  }
  if (recheck_growth == 0) throw ConfigError("recheck growth must be positive");
  if (!(wall_clock_budget > 0.0)) throw ConfigError("wall-clock budget must be positive");
  if (!(solver_timeout > 0.0)) throw ConfigError("solver timeout must be positive");
}

namespace {

class Engine {
 public:
  Engine(const Crn& crn, const Property& prop, const EngineConfig& config,
         const EvaluationObserver& observer)
      : crn_(crn), prop_(prop), config_(config), observer_(observer), start_(Clock::now()),
        deadline_(start_ + to_millis(config.wall_clock_budget)),
        main_(config.solver_command, to_millis(config.solver_timeout)),
        aux_(config.solver_command, to_millis(config.solver_timeout)) {
    main_.set_deadline(deadline_);
    aux_.set_deadline(deadline_);
    result_.ctmc = WitnessCtmc(crn);
    if (config.delta > 0) {
      dnc_.emplace(crn, prop, config.delta, config.dnc_segment_cap, aux_);
    }
  }

  CexResult run() {
    try {
      loop();
    } catch (const SolverTimeout&) {
      if (Clock::now() < deadline_) throw;
      result_.stop_reason = "wall-clock budget exhausted during a solver call";
    }
    if (!result_.success() &&
        (result_.probability_history.empty() || graph().real_size() != last_eval_size_)) {
      evaluate();
    }
    result_.final_bound = bound_;
    result_.elapsed = seconds_since(start_);
    return std::move(result_);
  }

 private:
  WitnessCtmc& graph() { return result_.ctmc; }

  bool evaluate() {
    const auto t0 = Clock::now();
    const FiniteCtmc ctmc = graph().to_finite_ctmc(prop_);
    const double p = reach_probability(ctmc, prop_.time_bound, config_.transient);
    result_.times.probability += seconds_since(t0);
    result_.probability = p;
    result_.probability_history.push_back(p);
    last_eval_size_ = graph().real_size();
    if (observer_) observer_(graph(), p);
    if (p > prop_.threshold) {
      result_.outcome = Outcome::Counterexample;
      result_.stop_reason = "probability threshold exceeded";
      return true;
    }
    return false;
  }

  bool maybe_evaluate() {
    if (graph().real_size() >= last_eval_size_ + config_.recheck_growth) return evaluate();
    return false;
  }

  bool scaffolding_enabled() const { return config_.scaffold_j_max > 0; }

  void scaffold() {
    auto t0 = Clock::now();
    std::vector<Witness> fragments =
        scaffold_round(graph(), prop_, config_.scaffold_j_max, config_.scaffold_count, aux_);
    result_.times.solving += seconds_since(t0);
    t0 = Clock::now();
    for (const Witness& f : fragments) graph().add_trace(f);
    result_.times.graph += seconds_since(t0);
    result_.fragment_count += fragments.size();
    last_scaffold_productive_ = !fragments.empty();
    size_at_last_scaffold_ = graph().real_size();
    since_scaffold_ = 0;
  }

  void record(const Witness& w) {
    const auto t0 = Clock::now();
    graph().add_witness(w);
    result_.times.graph += seconds_since(t0);
    result_.witnesses.push_back(w);
    ++result_.witness_count;
    ++since_scaffold_;
  }

  /// Next witness from the main BMC flow, or nullopt when the current bound is exhausted.
  std::optional<Witness> next_bmc_witness() {
    const UnrollContext ctx(crn_, bound_);
    if (rebuild_) {
      main_.reset();
      main_.assert_formula(encode_bmc(ctx, prop_));
      main_.push();
      rebuild_ = false;
    }
    const auto t0 = Clock::now();
    CheckResult r = main_.check();
    result_.times.solving += seconds_since(t0);
    auto* model = std::get_if<SolverModel>(&r);
    if (!model) return std::nullopt;
    Witness w = extract_witness(*model, ctx);
    main_.assert_formula(encode_exclusion(ctx, w));
    return w;
  }

  void loop() {
    if (prop_.is_target(crn_.initial())) {
      evaluate();
      return;
    }
    while (true) {
      if (Clock::now() >= deadline_) {
        result_.stop_reason = "wall-clock budget exhausted";
        return;
      }
      ++result_.iterations;
      if (dnc_ && dnc_active_) {
        const auto t0 = Clock::now();
        std::optional<Witness> w = dnc_->next();
        result_.times.solving += seconds_since(t0);
        if (!w) {
          // Fall back to the plain BMC flow.
          dnc_active_ = false;
          continue;
        }
        record(*w);
      } else {
        if (bound_ > config_.max_bound) {
          result_.stop_reason = "bound cap reached";
          return;
        }
        std::optional<Witness> w = next_bmc_witness();
        if (!w) {
          const std::size_t size_before = graph().real_size();
          if (graph().real_size() != last_eval_size_ && result_.witness_count > 0 && evaluate()) {
            return;
          }
          // Keep scaffolding while it still extends the graph.
          if (scaffolding_enabled() && result_.witness_count > 0 &&
              (graph().real_size() != size_at_last_scaffold_ || last_scaffold_productive_)) {
            scaffold();
            if (maybe_evaluate()) return;
          }
          if (last_scaffold_productive_ && graph().real_size() != size_before) continue;
          ++bound_;
          rebuild_ = true;
          continue;
        }
        record(*w);
      }
      if (maybe_evaluate()) return;
      if (scaffolding_enabled() && since_scaffold_ >= config_.scaffold_trigger) {
        scaffold();
        if (maybe_evaluate()) return;
      }
    }
  }

  const Crn& crn_;
  const Property& prop_;
  const EngineConfig& config_;
  const EvaluationObserver& observer_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  SolverSession main_;
  SolverSession aux_;
  std::optional<DncSearch> dnc_;
  bool dnc_active_ = true;
  CexResult result_;
  std::uint32_t bound_ = 0;
  bool rebuild_ = true;
  std::size_t last_eval_size_ = 0;
  std::size_t size_at_last_scaffold_ = 0;
  bool last_scaffold_productive_ = false;
  std::uint32_t since_scaffold_ = 0;
};

}  // namespace

std::vector<Witness> enumerate_bmc_witnesses(const Crn& crn, const Property& prop, std::uint32_t k,
                                             SolverSession& session, std::size_t limit) {
  const UnrollContext ctx(crn, k);
  session.reset();
  session.assert_formula(encode_bmc(ctx, prop));
  std::vector<Witness> found;
  while (true) {
    CheckResult r = session.check();
    auto* model = std::get_if<SolverModel>(&r);
    if (!model) return found;
    if (found.size() == limit) {
      throw ResourceError(fmt::format("more than {} witnesses at bound {}", limit, k));
    }
    found.push_back(extract_witness(*model, ctx));
    session.assert_formula(encode_exclusion(ctx, found.back()));
  }
}

CexResult generate_counterexample(const Crn& crn, const Property& prop, const EngineConfig& config,
                                  const EvaluationObserver& observer) {
  config.validate(crn, prop);
  Engine engine(crn, prop, config, observer);
  return engine.run();
}

}  // namespace crncex
