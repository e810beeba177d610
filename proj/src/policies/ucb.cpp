#include "fog/policies/ucb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fog/common/errors.hpp"

namespace fog::policies {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Ducb::Ducb(std::size_t arms, double discount, double exploration)
    : discount_(discount),
      exploration_(exploration),
      counts_(arms, 0.0),
      reward_sums_(arms, 0.0) {
  if (arms == 0) throw ConfigError("ducb needs at least one arm");
  if (!(discount > 0.0 && discount <= 1.0)) throw ConfigError("ducb: discount must be in (0, 1]");
  if (!(exploration >= 0.0)) throw ConfigError("ducb: exploration must be non-negative");
}

std::vector<double> Ducb::indices() const {
  double n = 0.0;
  for (double c : counts_) n += c;
  const double log_n = std::log(std::max(n, 1.0));
  std::vector<double> out(counts_.size());
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    if (counts_[j] <= 0.0) {
      out[j] = kInf;
      continue;
    }
    out[j] = reward_sums_[j] / counts_[j] + std::sqrt(exploration_ * log_n / counts_[j]);
  }
  return out;
}

Arm Ducb::select_arm(Rng& /*rng*/) {
  const auto idx = indices();
  // max_element returns the first maximum, i.e. the lowest arm on ties.
  return static_cast<Arm>(std::max_element(idx.begin(), idx.end()) - idx.begin());
}

void Ducb::ingest(const delay::FeedbackSet& feedback) {
  if (feedback.empty()) return;
  if (started_ && feedback.slot > last_slot_ && discount_ < 1.0) {
    const double factor = std::pow(discount_, static_cast<double>(feedback.slot - last_slot_));
    for (std::size_t j = 0; j < counts_.size(); ++j) {
      counts_[j] *= factor;
      reward_sums_[j] *= factor;
    }
  }
  started_ = true;
  last_slot_ = feedback.slot;
  for (const auto& r : feedback.records) {
    counts_.at(r.arm) += 1.0;
    reward_sums_.at(r.arm) += 1.0 - r.loss;
  }
}

Blot::Blot(std::size_t arms, Slot window, double exploration)
    : window_(window), exploration_(exploration), samples_(arms), sums_(arms, 0.0) {
  if (arms == 0) throw ConfigError("blot needs at least one arm");
  if (window < 1) throw ConfigError("blot: window must be at least 1");
  if (!(exploration >= 0.0)) throw ConfigError("blot: exploration must be non-negative");
}

void Blot::expire(Slot now) {
  for (std::size_t j = 0; j < samples_.size(); ++j) {
    auto& q = samples_[j];
    while (!q.empty() && q.front().slot <= now - window_) {
      sums_[j] -= q.front().loss;
      q.pop_front();
    }
    if (q.empty()) sums_[j] = 0.0;
  }
}

std::vector<double> Blot::indices() const {
  const double horizon = static_cast<double>(std::clamp<Slot>(now_, 1, window_));
  const double log_t = std::log(horizon);
  std::vector<double> out(samples_.size());
  for (std::size_t j = 0; j < samples_.size(); ++j) {
    const auto n = static_cast<double>(samples_[j].size());
    if (n == 0.0) {
      out[j] = -kInf;
      continue;
    }
    out[j] = sums_[j] / n - std::sqrt(exploration_ * log_t / n);
  }
  return out;
}

Arm Blot::select_arm(Rng& /*rng*/) {
  const auto idx = indices();
  return static_cast<Arm>(std::min_element(idx.begin(), idx.end()) - idx.begin());
}

void Blot::ingest(const delay::FeedbackSet& feedback) {
  now_ = std::max(now_, feedback.slot);
  for (const auto& r : feedback.records) {
    samples_.at(r.arm).push_back({feedback.slot, r.loss});
    sums_[r.arm] += r.loss;
  }
  expire(now_);
}

}  // namespace fog::policies
