#pragma once

#include <cstddef>
#include <vector>

namespace crncex {

/// Truncated Poisson(lambda_t) probabilities on [left, right]. weights[i] is the pmf at left + i;
/// the kept mass total_weight lies in [1 - epsilon, 1].
struct PoissonWeights {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<double> weights;
  double total_weight = 0.0;

  double weight(std::size_t k) const {
    return k < left || k > right ? 0.0 : weights[k - left];
  }
};

/// Fox-Glynn style computation: the pmf is evaluated at the mode in log space and extended by
/// the stable two-sided recurrence until each tail is provably below epsilon / 4.
/// Throws ResourceError if the right truncation point would exceed max_right.
PoissonWeights fox_glynn(double lambda_t, double epsilon, std::size_t max_right = 10'000'000);

}  // namespace crncex
