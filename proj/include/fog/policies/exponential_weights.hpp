#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fog/common/random.hpp"
#include "fog/common/types.hpp"

namespace fog::policies {

// Exponentially weighted distribution over K arms kept in the log domain.
// After every update the log-weights are shifted so the largest is 0; p is
// the max-shifted normalized exponential, so it never under- or overflows.
class ExponentialWeights {
 public:
  explicit ExponentialWeights(std::size_t arms);

  std::size_t size() const { return log_weights_.size(); }
  std::span<const double> probabilities() const { return probs_; }
  std::span<const double> log_weights() const { return log_weights_; }

  // log w_j -= eta * estimates[j], then renormalize.
  void apply(std::span<const double> estimates, double eta);

  // Inverse-CDF draw with one uniform variate.
  Arm sample(Rng& rng) const;

 private:
  void renormalize();

  std::vector<double> log_weights_;
  std::vector<double> probs_;
};

// Draws an index from a probability vector with one uniform variate.
Arm sample_from(std::span<const double> probs, Rng& rng);

}  // namespace fog::policies
