#include "fog/harness/regret.hpp"

#include <algorithm>

#include "fog/common/errors.hpp"

namespace fog::harness {

RegretTracker::RegretTracker(std::size_t arms, Slot phase_break)
    : phase_break_(phase_break), sums_(arms, 0.0) {
  if (arms == 0) throw UsageError("RegretTracker: no arms");
}

double RegretTracker::add(Slot t, std::span<const double> losses, Arm arm) {
  if (losses.size() != sums_.size() || arm >= sums_.size()) {
    throw UsageError("RegretTracker: loss vector does not match the arm count");
  }
  if (phase_break_ > 0 && t == phase_break_) {
    closed_min_ = *std::min_element(sums_.begin(), sums_.end());
    std::fill(sums_.begin(), sums_.end(), 0.0);
  }
  for (std::size_t j = 0; j < sums_.size(); ++j) sums_[j] += losses[j];
  played_ += losses[arm];
  return played_ - (closed_min_ + *std::min_element(sums_.begin(), sums_.end()));
}

Arm RegretTracker::best_arm() const {
  return static_cast<Arm>(std::min_element(sums_.begin(), sums_.end()) - sums_.begin());
}

}  // namespace fog::harness
