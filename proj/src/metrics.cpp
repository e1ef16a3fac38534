#include "cpd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "cpd/error.hpp"

namespace cpd {

namespace {

// max over x in from of min over y in to of |x - y|; `to` is sorted.
double directed(std::span<const int> from, const std::vector<int>& to) {
  int worst = 0;
  for (int x : from) {
    const auto it = std::lower_bound(to.begin(), to.end(), x);
    int nearest = std::numeric_limits<int>::max();
    if (it != to.end()) nearest = *it - x;
    if (it != to.begin()) nearest = std::min(nearest, x - *std::prev(it));
    worst = std::max(worst, nearest);
  }
  return worst;
}

}  // namespace

double hausdorff(std::span<const int> a, std::span<const int> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("hausdorff distance needs two nonempty sets");
  std::vector<int> sa(a.begin(), a.end());
  std::vector<int> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return std::max(directed(a, sb), directed(b, sa));
}

int LocalizationReport::max_error() const noexcept {
  return per_cp_error.empty() ? 0 : *std::max_element(per_cp_error.begin(), per_cp_error.end());
}

LocalizationReport localization_report(std::span<const int> estimate, const PiecewiseSignal& truth) {
  LocalizationReport report;
  const auto& eta = truth.change_points();
  std::vector<int> est(estimate.begin(), estimate.end());
  std::sort(est.begin(), est.end());

  report.k_true = truth.num_change_points();
  report.k_est = static_cast<int>(est.size());
  report.k_correct = report.k_true == report.k_est;
  if (report.k_correct) {
    report.per_cp_error.reserve(eta.size());
    for (std::size_t k = 0; k < eta.size(); ++k) report.per_cp_error.push_back(std::abs(est[k] - eta[k]));
  }
  if (est.empty() && eta.empty()) {
    report.hausdorff = 0.0;
  } else if (est.empty() || eta.empty()) {
    report.hausdorff = kNoMatch;
  } else {
    report.hausdorff = hausdorff(est, eta);
  }
  return report;
}

double estimate_sigma(std::span<const double> y) {
  if (y.size() < 2) throw InvalidArgument("estimate_sigma requires n >= 2");
  std::vector<double> diffs(y.size() - 1);
  for (std::size_t i = 0; i + 1 < y.size(); ++i) diffs[i] = std::fabs(y[i + 1] - y[i]);
  const std::size_t m = diffs.size();
  const auto mid = diffs.begin() + static_cast<std::ptrdiff_t>(m / 2);
  std::nth_element(diffs.begin(), mid, diffs.end());
  double median = *mid;
  if (m % 2 == 0) {
    median = 0.5 * (median + *std::max_element(diffs.begin(), mid));
  }
  return median / (std::sqrt(2.0) * 0.6745);
}

}  // namespace cpd
