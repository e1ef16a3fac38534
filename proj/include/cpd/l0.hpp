#pragma once

#include <span>
#include <vector>

#include "cpd/cusum.hpp"

namespace cpd {

/// Interval partition of {1, ..., n}, stored as the right endpoints of every
/// segment but the last (i.e. the induced change points).
class Segmentation {
 public:
  Segmentation(int n, std::vector<int> boundaries);

  int size() const noexcept { return n_; }
  const std::vector<int>& boundaries() const noexcept { return boundaries_; }
  int num_segments() const noexcept { return static_cast<int>(boundaries_.size()) + 1; }

 private:
  int n_;
  std::vector<int> boundaries_;
};

struct L0Options {
  /// Drop start candidates that can no longer be optimal. Exact up to
  /// floating-point ties; off by default.
  bool prune = false;
};

struct L0Result {
  Segmentation segmentation;
  double objective;             // G(P, Y, lambda) at the returned partition
  std::vector<double> fitted;   // segment means of Y
  double lambda;
};

/// Within-segment sum of squares of observations i..j (1-based, inclusive).
double segment_cost(const PrefixSums& prefix, int i, int j);

/// Global minimiser of sum of segment SSEs + lambda * (#segments - 1) by the
/// O(n^2) dynamic program. Among equal-cost predecessors the smallest start
/// (the longest final segment) wins.
L0Result solve_l0(std::span<const double> y, double lambda, L0Options options = {});

/// Direct evaluation of the penalised objective with two-pass segment means.
double recompute_objective(std::span<const double> y, const Segmentation& segmentation,
                           double lambda);

/// Piecewise-constant vector of segment means induced by a partition.
std::vector<double> fitted_values(std::span<const double> y, const Segmentation& segmentation);

/// Induced change points of a vector: every i with v_i != v_{i+1}.
std::vector<int> induced_change_points(std::span<const double> v);

/// c_lambda * sigma^2 * log(n).
double default_lambda(double sigma, int n, double c_lambda = 2.0);

}  // namespace cpd
