#include "cpd/wbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <fmt/format.h>

#include "cpd/cusum.hpp"
#include "cpd/error.hpp"

namespace cpd {

IntervalSet::IntervalSet(int n, std::vector<Interval> intervals, Seed seed, std::optional<int> max_len)
    : n_(n), intervals_(std::move(intervals)), seed_(seed), max_len_(max_len) {
  for (const auto& iv : intervals_) {
    if (iv.start < 0 || iv.end > n_ || iv.start >= iv.end) {
      throw InvalidArgument(fmt::format("interval ({}, {}] outside [0, {}]", iv.start, iv.end, n_));
    }
    if (max_len_ && iv.length() > *max_len_) {
      throw InvalidArgument(fmt::format("interval ({}, {}] longer than max_len {}", iv.start, iv.end, *max_len_));
    }
  }
}

IntervalSet sample_intervals(int n, int count, Seed seed, std::optional<int> max_len) {
  if (n < 2) throw InvalidArgument("sample_intervals requires n >= 2");
  if (count < 1) throw InvalidArgument("sample_intervals requires at least one interval");
  if (max_len && *max_len < 2) throw InvalidArgument("max_len must be at least 2");

  // Two independent uniform endpoints on {0..n}, sorted and conditioned on
  // 2 <= length <= cap, have P(length = d) proportional to n + 1 - d and a
  // uniform left endpoint given d. Sampling that law directly avoids the
  // rejection loop, which stalls when cap is small relative to n.
  const int cap = max_len ? std::min(*max_len, n) : n;
  std::vector<double> weights(static_cast<std::size_t>(cap - 1));
  for (int d = 2; d <= cap; ++d) weights[static_cast<std::size_t>(d - 2)] = n + 1 - d;
  std::discrete_distribution<int> length(weights.begin(), weights.end());

  std::mt19937_64 engine(derive_seed(seed, 0x1e7a1).value);
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    const int d = 2 + length(engine);
    const int a = std::uniform_int_distribution<int>(0, n - d)(engine);
    out.push_back({a, a + d});
  }
  return IntervalSet(n, std::move(out), seed, max_len);
}

Method parse_method(std::string_view name) {
  if (name == "l0") return Method::l0;
  if (name == "bs") return Method::bs;
  if (name == "wbs") return Method::wbs;
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::l0:
      return "l0";
    case Method::bs:
      return "bs";
    case Method::wbs:
      break;
  }
  return "wbs";
}

namespace {

DetectionResult segment(std::span<const double> y, std::span<const Interval> intervals, double tau,
                        Method method) {
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  for (double v : y) {
    if (!std::isfinite(v)) throw InvalidArgument("input contains non-finite values");
  }
  const int n = static_cast<int>(y.size());
  for (const auto& iv : intervals) {
    if (iv.start < 0 || iv.end > n) throw InvalidArgument("interval exceeds the data length");
  }

  DetectionResult result;
  result.method = method;
  result.tau = tau;
  if (n < 2) return result;

  const PrefixSums prefix(y);
  const auto sums = prefix.sums();

  // Depth-first over working intervals, left branch first.
  std::vector<Interval> pending{{0, n}};
  while (!pending.empty()) {
    const Interval work = pending.back();
    pending.pop_back();
    if (work.length() < 2) continue;

    double best_a = -std::numeric_limits<double>::infinity();
    int best_b = 0;
    Interval best_clip{0, 0};
    for (const auto& iv : intervals) {
      const int sm = std::max(work.start, iv.start);
      const int em = std::min(work.end, iv.end);
      double a = -1.0;
      int b = 0;
      if (em - sm > 1) {
        const auto hit = kernels::cusum_argmax(sums, sm, em);
        a = hit.value;
        b = hit.location;
      }
      if (a > best_a) {
        best_a = a;
        best_b = b;
        best_clip = {sm, em};
      }
    }
    if (!(best_a > tau)) continue;

    result.change_points.push_back(best_b);
    result.diagnostics.push_back({best_b, best_clip, best_a});
    pending.push_back({best_b, work.end});
    pending.push_back({work.start, best_b});
  }
  std::sort(result.change_points.begin(), result.change_points.end());
  return result;
}

}  // namespace

DetectionResult wbs_detect(std::span<const double> y, const IntervalSet& intervals, double tau) {
  if (intervals.signal_length() != static_cast<int>(y.size())) {
    throw InvalidArgument("interval set was drawn for a different signal length");
  }
  return segment(y, intervals.intervals(), tau, Method::wbs);
}

DetectionResult bs_detect(std::span<const double> y, double tau) {
  const Interval whole{0, static_cast<int>(y.size())};
  return segment(y, std::span<const Interval>(&whole, 1), tau, Method::bs);
}

double default_tau(double sigma, int n, double c_tau) {
  if (n < 2) throw InvalidArgument("default_tau requires n >= 2");
  if (!(sigma > 0.0) || !(c_tau > 0.0)) throw InvalidArgument("default_tau requires sigma, c_tau > 0");
  return c_tau * sigma * std::sqrt(std::log(static_cast<double>(n)));
}

int min_intervals(int n, int delta) {
  if (delta < 1 || delta > n) throw InvalidArgument(fmt::format("min_intervals needs 1 <= delta <= n, got delta={}, n={}", delta, n));
  const double ratio = static_cast<double>(n) / delta;
  const double m = std::ceil(16.0 * ratio * ratio * std::log(std::max(ratio, std::exp(1.0))));
  if (m > static_cast<double>(std::numeric_limits<int>::max())) {
    throw InvalidArgument("min_intervals overflows int");
  }
  return static_cast<int>(m);
}

}  // namespace cpd
