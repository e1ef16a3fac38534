#include "cpd/l0.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "cpd/error.hpp"

namespace cpd {

Segmentation::Segmentation(int n, std::vector<int> boundaries)
    : n_(n), boundaries_(std::move(boundaries)) {
  if (n_ < 1) throw InvalidArgument("segmentation length must be positive");
  int prev = 0;
  for (int b : boundaries_) {
    if (b <= prev || b > n_ - 1) {
      throw InvalidArgument(fmt::format("boundary {} breaks 0 < b_1 < ... < b_k <= {}", b, n_ - 1));
    }
    prev = b;
  }
}

double segment_cost(const PrefixSums& prefix, int i, int j) {
  if (i < 1 || j > prefix.size() || i > j) {
    throw InvalidArgument(fmt::format("segment [{}, {}] outside [1, {}]", i, j, prefix.size()));
  }
  const double len = j - i + 1;
  const double d1 = prefix.sums()[j] - prefix.sums()[i - 1];
  const double sse = (prefix.squares()[j] - prefix.squares()[i - 1]) - d1 * d1 / len;
  return sse > 0.0 ? sse : 0.0;
}

namespace {

// Pruned variant of the recursion: a start i is discarded once
// cost[i] + SSE(i+1..j) exceeds best[j] + lambda, because splitting at j then
// beats i for every later endpoint (SSE is superadditive under merging).
std::vector<int> pruned_predecessors(const PrefixSums& prefix, double lambda,
                                     std::vector<double>& best) {
  const int n = prefix.size();
  const auto sums = prefix.sums();
  const auto sq = prefix.squares();
  std::vector<int> pred(static_cast<std::size_t>(n + 1), 0);
  std::vector<double> cost(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<int> alive{0};
  std::vector<double> cand;
  for (int j = 1; j <= n; ++j) {
    double best_value = std::numeric_limits<double>::infinity();
    int best_start = 0;
    cand.resize(alive.size());
    for (std::size_t k = 0; k < alive.size(); ++k) {
      const int i = alive[k];
      const double len = static_cast<double>(j) - static_cast<double>(i);
      const double d1 = sums[j] - sums[i];
      double sse = (sq[j] - sq[i]) - d1 * d1 / len;
      sse = sse > 0.0 ? sse : 0.0;
      cand[k] = cost[i] + sse;
      if (cand[k] < best_value) {
        best_value = cand[k];
        best_start = i;
      }
    }
    best[j] = best_value;
    pred[j] = best_start;
    cost[j] = best_value + lambda;
    // Relative slack so round-off never discards a start that ties the optimum.
    const double bound = cost[j] + 1e-12 * (std::fabs(cost[j]) + 1.0);
    std::size_t kept = 0;
    for (std::size_t k = 0; k < alive.size(); ++k) {
      if (cand[k] <= bound) alive[kept++] = alive[k];
    }
    alive.resize(kept);
    alive.push_back(j);
  }
  return pred;
}

std::vector<int> full_predecessors(const PrefixSums& prefix, double lambda,
                                   std::vector<double>& best) {
  const int n = prefix.size();
  std::vector<int> pred(static_cast<std::size_t>(n + 1), 0);
  // cost[i] = best[i] + lambda for i > 0; the first segment is free.
  std::vector<double> cost(static_cast<std::size_t>(n + 1), 0.0);
  for (int j = 1; j <= n; ++j) {
    const auto step = kernels::segment_min(std::span<const double>(cost).first(static_cast<std::size_t>(j)),
                                           prefix.sums(), prefix.squares(), j);
    best[j] = step.value;
    pred[j] = step.start;
    cost[j] = step.value + lambda;
  }
  return pred;
}

}  // namespace

L0Result solve_l0(std::span<const double> y, double lambda, L0Options options) {
  if (y.empty()) throw InvalidArgument("solve_l0: empty input");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("solve_l0: lambda must be positive and finite");
  for (double v : y) {
    if (!std::isfinite(v)) throw InvalidArgument("solve_l0: input contains non-finite values");
  }
  const int n = static_cast<int>(y.size());
  const PrefixSums prefix(y);
  std::vector<double> best(static_cast<std::size_t>(n + 1), 0.0);
  const std::vector<int> pred = options.prune ? pruned_predecessors(prefix, lambda, best)
                                              : full_predecessors(prefix, lambda, best);

  std::vector<int> boundaries;
  for (int j = pred[static_cast<std::size_t>(n)]; j > 0; j = pred[static_cast<std::size_t>(j)]) {
    boundaries.push_back(j);
  }
  std::reverse(boundaries.begin(), boundaries.end());

  Segmentation segmentation(n, std::move(boundaries));
  std::vector<double> fitted = fitted_values(y, segmentation);
  return L0Result{std::move(segmentation), best[static_cast<std::size_t>(n)], std::move(fitted), lambda};
}

std::vector<double> fitted_values(std::span<const double> y, const Segmentation& segmentation) {
  if (static_cast<int>(y.size()) != segmentation.size()) throw InvalidArgument("segmentation length mismatch");
  std::vector<double> fitted(y.size());
  std::size_t begin = 0;
  for (int k = 0; k < segmentation.num_segments(); ++k) {
    const auto end = k + 1 < segmentation.num_segments()
                         ? static_cast<std::size_t>(segmentation.boundaries()[static_cast<std::size_t>(k)])
                         : y.size();
    double mean = 0.0;
    for (std::size_t i = begin; i < end; ++i) mean += y[i];
    mean /= static_cast<double>(end - begin);
    std::fill(fitted.begin() + static_cast<std::ptrdiff_t>(begin), fitted.begin() + static_cast<std::ptrdiff_t>(end), mean);
    begin = end;
  }
  return fitted;
}

double recompute_objective(std::span<const double> y, const Segmentation& segmentation, double lambda) {
  const std::vector<double> fitted = fitted_values(y, segmentation);
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) total += (y[i] - fitted[i]) * (y[i] - fitted[i]);
  return total + lambda * (segmentation.num_segments() - 1);
}

std::vector<int> induced_change_points(std::span<const double> v) {
  std::vector<int> cps;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] != v[i - 1]) cps.push_back(static_cast<int>(i));
  }
  return cps;
}

double default_lambda(double sigma, int n, double c_lambda) {
  if (n < 2) throw InvalidArgument("default_lambda requires n >= 2");
  if (!(sigma > 0.0) || !(c_lambda > 0.0)) throw InvalidArgument("default_lambda requires sigma, c_lambda > 0");
  return c_lambda * sigma * sigma * std::log(static_cast<double>(n));
}

}  // namespace cpd
