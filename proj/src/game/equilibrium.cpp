#include "fog/game/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fog/common/errors.hpp"

namespace fog::game {

GameMatrix::GameMatrix(const std::vector<std::vector<double>>& rows) : n_(rows.size()) {
  if (n_ == 0) throw ConfigError("matrix must not be empty");
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw ConfigError("matrix must be square");
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("matrix entries must lie in [0, 1]");
      data_.push_back(v);
    }
  }
}

std::vector<std::vector<double>> GameMatrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

namespace {

void check_dims(const GameMatrix& u, std::span<const double> p, std::span<const double> q) {
  if (p.size() != u.size() || q.size() != u.size()) {
    throw UsageError("strategy dimension " + std::to_string(p.size()) + "/" +
                     std::to_string(q.size()) + " does not match matrix size " +
                     std::to_string(u.size()));
  }
}

}  // namespace

double column_value(const GameMatrix& u, std::span<const double> p, std::size_t j) {
  double v = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) v += p[i] * u(i, j);
  return v;
}

double row_value(const GameMatrix& u, std::size_t i, std::span<const double> q) {
  double v = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) v += q[j] * u(i, j);
  return v;
}

double bilinear_value(const GameMatrix& u, std::span<const double> p, std::span<const double> q) {
  check_dims(u, p, q);
  double v = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) v += p[i] * row_value(u, i, q);
  return v;
}

NeGap epsilon_ne_gap(const GameMatrix& u, std::span<const double> p, std::span<const double> q) {
  const double value = bilinear_value(u, p, q);
  double best_row = std::numeric_limits<double>::infinity();
  double best_col = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < u.size(); ++k) {
    best_row = std::min(best_row, row_value(u, k, q));
    best_col = std::max(best_col, column_value(u, p, k));
  }
  // Rounding can leave a gap a few ulps below zero at an exact equilibrium.
  return {std::max(0.0, value - best_row), std::max(0.0, best_col - value)};
}

bool is_simplex(std::span<const double> p, double tolerance) {
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) return false;
    total += v;
  }
  return std::abs(total - 1.0) <= tolerance;
}

std::vector<double> ergodic_average(std::span<const std::vector<double>> history) {
  if (history.empty()) throw UsageError("ergodic_average: empty history");
  ErgodicAverager avg(history.front().size());
  for (const auto& p : history) avg.add(p);
  return avg.mean();
}

ErgodicAverager::ErgodicAverager(std::size_t dimension) : sum_(dimension, 0.0) {}

void ErgodicAverager::add(std::span<const double> p) {
  if (p.size() != sum_.size()) throw UsageError("ergodic average: dimension mismatch");
  for (std::size_t j = 0; j < p.size(); ++j) sum_[j] += p[j];
  ++count_;
}

std::vector<double> ErgodicAverager::mean() const {
  if (count_ == 0) throw UsageError("ergodic_average: empty history");
  std::vector<double> out(sum_);
  for (double& v : out) v /= static_cast<double>(count_);
  return out;
}

std::vector<double> joint_frequency(std::span<const Arm> row_history,
                                    std::span<const Arm> column_history, std::size_t begin,
                                    std::size_t end, std::size_t arms) {
  if (row_history.size() != column_history.size()) {
    throw UsageError("joint_frequency: histories are not aligned");
  }
  if (begin >= end || end > row_history.size()) {
    throw UsageError("joint_frequency: window [" + std::to_string(begin) + ", " +
                     std::to_string(end) + ") outside history of length " +
                     std::to_string(row_history.size()));
  }
  std::vector<double> freq(arms * arms, 0.0);
  for (std::size_t t = begin; t < end; ++t) {
    if (row_history[t] >= arms || column_history[t] >= arms) {
      throw UsageError("joint_frequency: arm index out of range");
    }
    freq[row_history[t] * arms + column_history[t]] += 1.0;
  }
  const auto n = static_cast<double>(end - begin);
  for (double& v : freq) v /= n;
  return freq;
}

}  // namespace fog::game
