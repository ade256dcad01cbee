#include "crncex/witness.hpp"

#include <set>

#include <fmt/format.h>

#include "crncex/errors.hpp"

namespace crncex {

std::string Witness::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i > 0) out += fmt::format(" -R{}-> ", reactions[i - 1] + 1);
    out += states[i].to_string();
  }
  return out;
}

std::optional<ReactionIndex> explaining_reaction(const Crn& crn, const State& from, const State& to) {
  for (ReactionIndex i = 0; i < crn.reaction_count(); ++i) {
    const Reaction& r = crn.reaction(i);
    if (!enabled(from, r)) continue;
    if (fire(from, r) == to) return i;
  }
  return std::nullopt;
}

void validate_trace(const Witness& w, const Crn& crn) {
  if (w.states.empty() || w.states.size() != w.reactions.size() + 1) {
    throw EncodingError("malformed trace: state/reaction counts disagree");
  }
  for (std::size_t i = 0; i < w.reactions.size(); ++i) {
    if (w.reactions[i] >= crn.reaction_count()) {
      throw EncodingError(fmt::format("step {} uses unknown reaction {}", i, w.reactions[i]));
    }
    const Reaction& r = crn.reaction(w.reactions[i]);
    if (!enabled(w.states[i], r) || fire(w.states[i], r) != w.states[i + 1]) {
      throw EncodingError(fmt::format("step {} ({} -> {}) is not a firing of R{}", i,
                                      w.states[i].to_string(), w.states[i + 1].to_string(),
                                      w.reactions[i] + 1));
    }
  }
}

bool is_loop_free(const Witness& w) {
  std::set<State> seen(w.states.begin(), w.states.end());
  return seen.size() == w.states.size();
}

Witness concatenate(const Witness& head, const Witness& tail) {
  if (head.states.empty()) return tail;
  if (tail.states.empty()) return head;
  if (head.back() != tail.front()) {
    throw ContractError("cannot concatenate traces that do not meet");
  }
  Witness out = head;
  out.states.insert(out.states.end(), tail.states.begin() + 1, tail.states.end());
  out.reactions.insert(out.reactions.end(), tail.reactions.begin(), tail.reactions.end());
  return out;
}

}  // namespace crncex
