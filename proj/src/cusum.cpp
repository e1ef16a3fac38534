#include "cpd/cusum.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cpd/error.hpp"

namespace cpd {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> x) {
  CompensatedSum acc;
  for (double v : x) acc.add(v);
  return acc.value();
}

void check_interval(int n, int s, int e) {
  if (s < 0 || e > n || e - s < 2) {
    throw InvalidArgument(fmt::format("interval ({}, {}] invalid for n = {} (need 0 <= s, e <= n, e - s >= 2)", s, e, n));
  }
}

}  // namespace

PrefixSums::PrefixSums(std::span<const double> y)
    : sums_(y.size() + 1, 0.0), squares_(y.size() + 1, 0.0) {
  if (!y.empty()) shift_ = compensated_sum(y) / static_cast<double>(y.size());
  CompensatedSum s1, s2;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double x = y[i] - shift_;
    s1.add(x);
    s2.add(x * x);
    sums_[i + 1] = s1.value();
    squares_[i + 1] = s2.value();
  }
}

double cusum(std::span<const double> y, int s, int e, int t) {
  const int n = static_cast<int>(y.size());
  if (s < 0 || e > n || !(s < t && t < e)) {
    throw InvalidArgument(fmt::format("cusum needs 0 <= s < t < e <= n, got s={}, t={}, e={}, n={}", s, t, e, n));
  }
  // Centre on the window mean: the shift cancels in the statistic and keeps
  // the two weighted sums from cancelling catastrophically.
  const double len = e - s, ln = t - s, rn = e - t;
  const double c = compensated_sum(y.subspan(static_cast<std::size_t>(s), static_cast<std::size_t>(e - s))) / len;
  CompensatedSum lsum, rsum;
  for (int i = s; i < t; ++i) lsum.add(y[static_cast<std::size_t>(i)] - c);
  for (int i = t; i < e; ++i) rsum.add(y[static_cast<std::size_t>(i)] - c);
  const double left = lsum.value();
  const double right = rsum.value();
  return std::sqrt(rn / (len * ln)) * left - std::sqrt(ln / (len * rn)) * right;
}

CusumScan cusum_scan(const PrefixSums& prefix, int s, int e) {
  check_interval(prefix.size(), s, e);
  CusumScan scan{s, e, std::vector<double>(static_cast<std::size_t>(e - s - 1))};
  kernels::cusum_values(prefix.sums(), s, e, scan.values);
  return scan;
}

CusumScan cusum_scan(std::span<const double> y, int s, int e) {
  check_interval(static_cast<int>(y.size()), s, e);
  // Prefix sums over the window only, so the shift is local to (s, e].
  const PrefixSums prefix(y.subspan(static_cast<std::size_t>(s), static_cast<std::size_t>(e - s)));
  CusumScan scan = cusum_scan(prefix, 0, e - s);
  scan.s = s;
  scan.e = e;
  return scan;
}

ArgmaxAbs argmax_abs(const CusumScan& scan) {
  ArgmaxAbs best{scan.s + 1, -1.0};
  for (std::size_t k = 0; k < scan.values.size(); ++k) {
    const double a = std::fabs(scan.values[k]);
    if (a > best.value) best = {scan.s + 1 + static_cast<int>(k), a};
  }
  if (best.value < 0.0) best.value = 0.0;
  return best;
}

std::vector<double> contrast(int s, int e, int d) {
  if (!(s < d && d < e)) throw InvalidArgument(fmt::format("contrast needs s < d < e, got {}, {}, {}", s, d, e));
  const double len = e - s, ln = d - s, rn = e - d;
  const double pos = std::sqrt(rn / (len * ln));
  const double neg = -std::sqrt(ln / (len * rn));
  std::vector<double> psi(static_cast<std::size_t>(e - s), neg);
  std::fill(psi.begin(), psi.begin() + (d - s), pos);
  return psi;
}

std::vector<double> project(std::span<const double> x, int s, int e, int d) {
  if (!(s < d && d < e)) throw InvalidArgument(fmt::format("project needs s < d < e, got {}, {}, {}", s, d, e));
  if (x.size() != static_cast<std::size_t>(e - s)) throw InvalidArgument("project: x must have length e - s");
  const auto split = static_cast<std::size_t>(d - s);
  const double left_mean = compensated_sum(x.first(split)) / static_cast<double>(split);
  const double right_mean = compensated_sum(x.subspan(split)) / static_cast<double>(x.size() - split);
  std::vector<double> out(x.size(), right_mean);
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(split), left_mean);
  return out;
}

double single_cp_cusum(const PiecewiseSignal& signal, int s, int e) {
  check_interval(signal.size(), s, e);
  int found = 0;
  int k_inside = 0;
  for (int k = 1; k <= signal.num_change_points(); ++k) {
    const int eta = signal.change_points()[static_cast<std::size_t>(k - 1)];
    if (s < eta && eta < e) {
      ++found;
      k_inside = k;
    }
  }
  if (found != 1) {
    throw InvalidArgument(fmt::format("expected exactly one change point in ({}, {}), found {}", s, e, found));
  }
  const double eta = signal.change_points()[static_cast<std::size_t>(k_inside - 1)];
  return std::sqrt((eta - s) * (e - eta) / static_cast<double>(e - s)) * signal.jump(k_inside);
}

}  // namespace cpd
