#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fog/common/types.hpp"

namespace fog::game {

// Square cost matrix with entries in [0, 1]. The row player pays U(i, j); the
// column player receives it.
class GameMatrix {
 public:
  // Throws ConfigError for a ragged, empty, non-square or out-of-range matrix.
  explicit GameMatrix(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::vector<std::vector<double>> rows() const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// U(p, j) = sum_i p_i U(i, j)
double column_value(const GameMatrix& u, std::span<const double> p, std::size_t j);
// U(i, q) = sum_j q_j U(i, j)
double row_value(const GameMatrix& u, std::size_t i, std::span<const double> q);
// U(p, q) = sum_i sum_j p_i q_j U(i, j). Throws UsageError on size mismatch.
double bilinear_value(const GameMatrix& u, std::span<const double> p, std::span<const double> q);

struct NeGap {
  double row = 0.0;     // U(p, q) - min_i U(i, q)
  double column = 0.0;  // max_j U(p, j) - U(p, q)

  bool within(double epsilon) const { return row <= epsilon && column <= epsilon; }
  double max() const { return row > column ? row : column; }
};

// Unilateral-deviation gaps of (p, q). Pure deviations suffice because the
// payoff is linear in each player's strategy.
NeGap epsilon_ne_gap(const GameMatrix& u, std::span<const double> p, std::span<const double> q);

// True when every entry is >= 0 and the entries sum to 1 within `tolerance`.
bool is_simplex(std::span<const double> p, double tolerance = 1e-9);

// Coordinate-wise mean of a non-empty sequence of distributions.
std::vector<double> ergodic_average(std::span<const std::vector<double>> history);

// Running form of ergodic_average for long horizons.
class ErgodicAverager {
 public:
  explicit ErgodicAverager(std::size_t dimension);
  void add(std::span<const double> p);
  std::size_t count() const { return count_; }
  // Throws UsageError when nothing was added.
  std::vector<double> mean() const;

 private:
  std::vector<double> sum_;
  std::size_t count_ = 0;
};

// K x K matrix, row-major: entry (a, b) is the share of slots in
// [begin, end) where the row agent played a and the column agent played b.
std::vector<double> joint_frequency(std::span<const Arm> row_history,
                                    std::span<const Arm> column_history, std::size_t begin,
                                    std::size_t end, std::size_t arms);

}  // namespace fog::game
