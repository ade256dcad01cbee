#include <fmt/format.h>

#include "crncex/bmc_encode.hpp"
#include "crncex/engine.hpp"
#include "crncex/errors.hpp"

namespace crncex {

DncSearch::DncSearch(const Crn& crn, const Property& prop, std::uint32_t delta,
                     std::uint32_t segment_cap, SolverSession& session)
    : crn_(crn), species_(prop.target_species), origin_(crn.initial()[prop.target_species]),
      delta_(delta), cap_(segment_cap == 0 ? 10 * delta : segment_cap), session_(session) {
  if (delta == 0) throw ConfigError("divide-and-conquer step must be positive");
  const Population gap = prop.target_value - origin_;
  if (gap % static_cast<Population>(delta) != 0) {
    throw ConfigError(fmt::format("step {} does not divide the distance {} from the initial "
                                  "population to the target",
                                  delta, gap));
  }
  if (cap_ < delta_) {
    throw ConfigError(fmt::format("segment cap {} is below the step {}", cap_, delta_));
  }
  direction_ = gap >= 0 ? 1 : -1;
  segments_ = static_cast<std::uint32_t>((gap >= 0 ? gap : -gap) / static_cast<Population>(delta));
}

std::optional<Witness> DncSearch::find_segment(const State& start, Population goal) {
  SegmentHistory& hist = history_[{start, goal}];
  if (hist.bound == 0) hist.bound = delta_;
  while (hist.bound <= cap_) {
    const UnrollContext ctx(crn_, hist.bound);
    session_.reset();
    session_.assert_formula(encode_bmc(ctx, start, species_, goal));
    for (const Witness& seen : hist.found) {
      if (seen.length() == hist.bound) session_.assert_formula(encode_exclusion(ctx, seen));
    }
    CheckResult r = session_.check();
    if (auto* model = std::get_if<SolverModel>(&r)) {
      Witness seg = extract_witness(*model, ctx);
      validate_trace(seg, crn_);
      hist.found.push_back(seg);
      return seg;
    }
    ++hist.bound;
  }
  return std::nullopt;
}

std::optional<Witness> DncSearch::next() {
  Witness w{{crn_.initial()}, {}};
  for (std::uint32_t m = 1; m <= segments_; ++m) {
    const Population goal =
        origin_ + direction_ * static_cast<Population>(m) * static_cast<Population>(delta_);
    auto seg = find_segment(w.back(), goal);
    if (!seg) return std::nullopt;
    w = concatenate(w, *seg);
  }
  return w;
}

std::optional<Witness> find_witness_dnc(const Crn& crn, const Property& prop, std::uint32_t delta,
                                        std::uint32_t per_segment_bound_cap,
                                        SolverSession& session) {
  DncSearch search(crn, prop, delta, per_segment_bound_cap, session);
  return search.next();
}

}  // namespace crncex
