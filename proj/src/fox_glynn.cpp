#include "crncex/fox_glynn.hpp"

#include <cmath>
#include <deque>

#include <fmt/format.h>

#include "crncex/errors.hpp"

namespace crncex {

PoissonWeights fox_glynn(double lambda_t, double epsilon, std::size_t max_right) {
  if (!(lambda_t >= 0.0) || !std::isfinite(lambda_t)) {
    throw ContractError(fmt::format("Poisson rate must be finite and non-negative, got {}", lambda_t));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ContractError(fmt::format("truncation error must lie in (0,1), got {}", epsilon));
  }
  PoissonWeights out;
  if (lambda_t == 0.0) {
    out.weights = {1.0};
    out.total_weight = 1.0;
    return out;
  }
  if (lambda_t > static_cast<double>(max_right)) {
    throw ResourceError(fmt::format("uniformization needs more than {} steps (lambda*t = {})",
                                    max_right, lambda_t));
  }

  // Each tail is cut at epsilon / 4; the slack absorbs the rounding of the log-space mode value,
  // which reaches ~1e-11 relative for lambda_t near 1e4.
  const double tail_eps = epsilon / 4.0;
  const auto mode = static_cast<std::size_t>(std::floor(lambda_t));
  const double log_mode = -lambda_t + static_cast<double>(mode) * std::log(lambda_t) -
                          std::lgamma(static_cast<double>(mode) + 1.0);
  std::deque<double> w{std::exp(log_mode)};

  // Left: w[k-1] = w[k] * k / lambda. Tail below left is bounded by a geometric series with
  // ratio (left - 1) / lambda.
  std::size_t left = mode;
  while (left > 0) {
    const double next = w.front() * static_cast<double>(left) / lambda_t;
    const double ratio = static_cast<double>(left - 1) / lambda_t;
    const double tail_bound = next / (1.0 - ratio);
    if (tail_bound <= tail_eps) break;
    w.push_front(next);
    --left;
  }

  // Right: w[k+1] = w[k] * lambda / (k+1). For k+2 > lambda the tail above k+1 is bounded by
  // w[k+1] / (1 - lambda / (k+2)).
  std::size_t right = mode;
  while (true) {
    const double next = w.back() * lambda_t / static_cast<double>(right + 1);
    const double ratio = lambda_t / static_cast<double>(right + 2);
    if (ratio < 1.0 && next / (1.0 - ratio) <= tail_eps) break;
    if (right + 1 > max_right) {
      throw ResourceError(fmt::format("uniformization needs more than {} steps (lambda*t = {})",
                                      max_right, lambda_t));
    }
    w.push_back(next);
    ++right;
  }

  out.left = left;
  out.right = right;
  out.weights.assign(w.begin(), w.end());
  double total = 0.0;
  for (double x : out.weights) total += x;
  out.total_weight = total;
  return out;
}

}  // namespace crncex
