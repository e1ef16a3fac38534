#pragma once

#include <span>
#include <vector>

#include "cpd/kernels.hpp"
#include "cpd/signal.hpp"

namespace cpd {

/// Prefix sums of y and y^2 over a shifted copy y - c, where c is the sample
/// mean. The shift leaves every CUSUM and every segment SSE unchanged while
/// keeping the running sums small; accumulation is compensated (Neumaier).
///
/// Index k of sums()/squares() holds the total over observations 1..k.
class PrefixSums {
 public:
  explicit PrefixSums(std::span<const double> y);

  int size() const noexcept { return static_cast<int>(sums_.size()) - 1; }
  double shift() const noexcept { return shift_; }
  std::span<const double> sums() const noexcept { return sums_; }
  std::span<const double> squares() const noexcept { return squares_; }

  /// Sum of the shifted values over (s, e].
  double sum(int s, int e) const { return sums_[e] - sums_[s]; }

 private:
  double shift_ = 0.0;
  std::vector<double> sums_;
  std::vector<double> squares_;
};

/// CUSUM statistic of y (1-based, y[0] is Y_1) on (s, e] split after t.
/// Requires 0 <= s < t < e <= n. Evaluated directly from the definition.
double cusum(std::span<const double> y, int s, int e, int t);

struct CusumScan {
  int s = 0;
  int e = 0;
  std::vector<double> values;  // values[t - s - 1] for t = s+1 .. e-1

  double at(int t) const { return values.at(static_cast<std::size_t>(t - s - 1)); }
};

/// All CUSUM values on (s, e] in O(e - s). Requires e - s >= 2.
CusumScan cusum_scan(std::span<const double> y, int s, int e);
CusumScan cusum_scan(const PrefixSums& prefix, int s, int e);

using kernels::ArgmaxAbs;

/// Smallest t maximising |CUSUM_t|, with that absolute value.
ArgmaxAbs argmax_abs(const CusumScan& scan);

/// Unit-norm contrast vector psi_d^{s,e}, length e - s.
std::vector<double> contrast(int s, int e, int d);

/// Projection of x (length e - s) onto vectors constant on (s, d] and (d, e]:
/// each half is replaced by its mean.
std::vector<double> project(std::span<const double> x, int s, int e, int d);

/// Closed form |f~_eta^{s,e}| = sqrt((eta - s)(e - eta)/(e - s)) * kappa_k for
/// a signal with exactly one change point eta strictly inside (s, e).
double single_cp_cusum(const PiecewiseSignal& signal, int s, int e);

}  // namespace cpd
