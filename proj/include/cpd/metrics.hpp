#pragma once

#include <limits>
#include <span>
#include <vector>

#include "cpd/signal.hpp"

namespace cpd {

/// Marker for "one set empty, the other not".
inline constexpr double kNoMatch = std::numeric_limits<double>::infinity();

/// Hausdorff distance between two nonempty point sets. Throws InvalidArgument
/// when either set is empty.
double hausdorff(std::span<const int> a, std::span<const int> b);

struct LocalizationReport {
  int k_true = 0;
  int k_est = 0;
  bool k_correct = false;
  std::vector<int> per_cp_error;  // |est_k - eta_k|, sorted matching; empty unless k_correct
  double hausdorff = kNoMatch;    // kNoMatch when exactly one of the sets is empty

  /// max_k per_cp_error, 0 when K = 0. Only meaningful when k_correct.
  int max_error() const noexcept;
};

LocalizationReport localization_report(std::span<const int> estimate, const PiecewiseSignal& truth);

/// median(|Y_{i+1} - Y_i|) / (sqrt(2) * 0.6745).
double estimate_sigma(std::span<const double> y);

}  // namespace cpd
