#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fog/common/types.hpp"

namespace fog::harness {

// Streams cumulative regret against the best fixed arm in hindsight, using
// per-slot loss vectors for every arm. With a phase break b > 0 the comparator
// is the best arm of slots [1, b) plus the best arm of slots [b, t].
class RegretTracker {
 public:
  explicit RegretTracker(std::size_t arms, Slot phase_break = 0);

  // Adds slot t (strictly increasing) where `arm` was played; returns the
  // cumulative regret through t.
  double add(Slot t, std::span<const double> losses, Arm arm);

  double played() const { return played_; }
  // Best arm of the current phase; lowest index on ties.
  Arm best_arm() const;
  const std::vector<double>& phase_sums() const { return sums_; }

 private:
  Slot phase_break_;
  double played_ = 0.0;
  double closed_min_ = 0.0;
  std::vector<double> sums_;
};

}  // namespace fog::harness
