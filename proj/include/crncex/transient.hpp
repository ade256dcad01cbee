#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <fmt/format.h>

#include "crncex/errors.hpp"
#include "crncex/fox_glynn.hpp"

namespace crncex {

/// Finite CTMC with a point-mass initial distribution and a target set.
/// Off-diagonal rates only; the generator's diagonal is implied by the exit rates.
template <typename Scalar>
class BasicFiniteCtmc {
 public:
  using Index = Eigen::Index;
  using RateMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Triplet = Eigen::Triplet<Scalar>;

  BasicFiniteCtmc() = default;

  /// Duplicate (i, j) entries are summed. Throws ContractError on self-loops, non-positive rates
  /// or out-of-range indices.
  BasicFiniteCtmc(Index n, const std::vector<Triplet>& rates, Index initial,
                  std::vector<bool> target)
      : rates_(n, n), initial_(initial), target_(std::move(target)) {
    if (initial < 0 || initial >= n) {
      throw ContractError(fmt::format("initial state {} outside 0..{}", initial, n - 1));
    }
    if (static_cast<Index>(target_.size()) != n) {
      throw ContractError("target mask length does not match the state count");
    }
    for (const Triplet& t : rates) {
      if (t.row() < 0 || t.row() >= n || t.col() < 0 || t.col() >= n) {
        throw ContractError(fmt::format("transition {}->{} outside 0..{}", t.row(), t.col(), n - 1));
      }
      if (t.row() == t.col()) throw ContractError("self-loops are not allowed in a rate matrix");
      if (!(t.value() > Scalar(0)) || !std::isfinite(static_cast<double>(t.value()))) {
        throw ContractError(fmt::format("non-positive rate on {}->{}", t.row(), t.col()));
      }
    }
    rates_.setFromTriplets(rates.begin(), rates.end());
    rates_.makeCompressed();
  }

  Index size() const { return rates_.rows(); }
  const RateMatrix& rates() const { return rates_; }
  Index initial() const { return initial_; }
  const std::vector<bool>& target() const { return target_; }
  bool is_target(Index i) const { return target_[static_cast<std::size_t>(i)]; }

  Vector exit_rates() const {
    Vector out = Vector::Zero(size());
    for (Index i = 0; i < rates_.outerSize(); ++i) {
      for (typename RateMatrix::InnerIterator it(rates_, i); it; ++it) out[i] += it.value();
    }
    return out;
  }

  Scalar max_exit_rate() const {
    return size() == 0 ? Scalar(0) : exit_rates().maxCoeff();
  }

  /// Dense generator Q (rows sum to zero).
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> generator() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> q = rates_;
    q.diagonal() -= exit_rates();
    return q;
  }

  std::vector<Triplet> triplets() const {
    std::vector<Triplet> out;
    out.reserve(static_cast<std::size_t>(rates_.nonZeros()));
    for (Index i = 0; i < rates_.outerSize(); ++i) {
      for (typename RateMatrix::InnerIterator it(rates_, i); it; ++it) {
        out.emplace_back(i, it.col(), it.value());
      }
    }
    return out;
  }

 private:
  RateMatrix rates_;
  Index initial_ = 0;
  std::vector<bool> target_;
};

using FiniteCtmc = BasicFiniteCtmc<double>;

struct TransientOptions {
  double epsilon = 1e-10;
  /// Uniformization rate = factor * max exit rate; > 1 keeps a self-loop at the fastest state.
  double uniformization_factor = 1.02;
  std::size_t max_iterations = 10'000'000;
};

/// Removes every outgoing transition of the given target states and marks them as targets.
template <typename Scalar>
BasicFiniteCtmc<Scalar> make_absorbing(const BasicFiniteCtmc<Scalar>& ctmc,
                                       const std::vector<bool>& target) {
  using Ctmc = BasicFiniteCtmc<Scalar>;
  if (target.size() != static_cast<std::size_t>(ctmc.size())) {
    throw ContractError("target mask length does not match the state count");
  }
  std::vector<typename Ctmc::Triplet> kept;
  for (const auto& t : ctmc.triplets()) {
    if (!target[static_cast<std::size_t>(t.row())]) kept.push_back(t);
  }
  return Ctmc(ctmc.size(), kept, ctmc.initial(), target);
}

template <typename Scalar>
BasicFiniteCtmc<Scalar> make_absorbing(const BasicFiniteCtmc<Scalar>& ctmc) {
  return make_absorbing(ctmc, ctmc.target());
}

/// Probability of occupying a target state at or before `time_bound`, by uniformization of the
/// target-absorbed chain with Kahan-compensated accumulation of the Poisson-weighted terms.
template <typename Scalar>
Scalar reach_probability(const BasicFiniteCtmc<Scalar>& ctmc, double time_bound,
                         const TransientOptions& options = {}) {
  using Ctmc = BasicFiniteCtmc<Scalar>;
  using Index = typename Ctmc::Index;
  if (!(time_bound >= 0.0) || !std::isfinite(time_bound)) {
    throw ContractError(fmt::format("time bound must be finite and non-negative, got {}", time_bound));
  }
  if (ctmc.is_target(ctmc.initial())) return Scalar(1);

  const Ctmc absorbed = make_absorbing(ctmc);
  const typename Ctmc::Vector exits = absorbed.exit_rates();
  const Scalar max_exit = exits.size() ? exits.maxCoeff() : Scalar(0);
  if (time_bound == 0.0 || max_exit <= Scalar(0)) return Scalar(0);

  const Scalar lambda = Scalar(options.uniformization_factor) * max_exit;
  const PoissonWeights poisson = fox_glynn(static_cast<double>(lambda) * time_bound,
                                           options.epsilon, options.max_iterations);

  // P = I + Q / lambda
  std::vector<typename Ctmc::Triplet> entries = absorbed.triplets();
  for (auto& t : entries) t = typename Ctmc::Triplet(t.row(), t.col(), t.value() / lambda);
  for (Index i = 0; i < absorbed.size(); ++i) {
    entries.emplace_back(i, i, Scalar(1) - exits[i] / lambda);
  }
  typename Ctmc::RateMatrix uniformized(absorbed.size(), absorbed.size());
  uniformized.setFromTriplets(entries.begin(), entries.end());

  typename Ctmc::Vector v(absorbed.size());
  for (Index i = 0; i < absorbed.size(); ++i) v[i] = absorbed.is_target(i) ? Scalar(1) : Scalar(0);
  typename Ctmc::Vector next(absorbed.size());

  Scalar sum(0);
  Scalar compensation(0);
  const Index init = absorbed.initial();
  for (std::size_t k = 0; k <= poisson.right; ++k) {
    if (k >= poisson.left) {
      const Scalar term = Scalar(poisson.weights[k - poisson.left]) * v[init] - compensation;
      const Scalar t = sum + term;
      compensation = (t - sum) - term;
      sum = t;
    }
    if (k < poisson.right) {
      next.noalias() = uniformized * v;
      v.swap(next);
    }
  }
  if (!std::isfinite(static_cast<double>(sum))) {
    throw NumericalError("uniformization produced a non-finite probability");
  }
  if (sum < Scalar(0)) return Scalar(0);
  if (sum > Scalar(1)) return Scalar(1);
  return sum;
}

}  // namespace crncex
