#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cpd/noise.hpp"

namespace cpd {

/// Half-open index pair (start, end]: observations start+1 .. end.
struct Interval {
  int start;
  int end;

  int length() const noexcept { return end - start; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

class IntervalSet {
 public:
  IntervalSet(int n, std::vector<Interval> intervals, Seed seed = {},
              std::optional<int> max_len = std::nullopt);

  int signal_length() const noexcept { return n_; }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  Seed seed() const noexcept { return seed_; }
  std::optional<int> max_len() const noexcept { return max_len_; }

 private:
  int n_;
  std::vector<Interval> intervals_;
  Seed seed_;
  std::optional<int> max_len_;
};

/// `count` intervals whose endpoints are two independent uniform draws from
/// {0, ..., n}, sorted, conditioned on 2 <= length (<= max_len).
IntervalSet sample_intervals(int n, int count, Seed seed, std::optional<int> max_len = std::nullopt);

enum class Method { l0, bs, wbs };

Method parse_method(std::string_view name);
std::string_view to_string(Method method) noexcept;

struct SplitDiagnostic {
  int location;       // b_{m*}
  Interval interval;  // clipped winning interval (s_{m*}, e_{m*}]
  double statistic;   // a_{m*}
};

struct DetectionResult {
  std::vector<int> change_points;  // sorted
  Method method = Method::wbs;
  double tau = 0.0;
  std::vector<SplitDiagnostic> diagnostics;  // in order of detection
};

/// Wild binary segmentation over the intervals in `intervals`, threshold tau.
///
/// In every working interval (s, e] each sampled interval is clipped to
/// [s, e]; clips shorter than 2 score -1, the others score the maximal |CUSUM|
/// on the clip. The best clip (smallest index on ties) yields a change point
/// b when its score exceeds tau, and the search continues on (s, b] and (b, e].
DetectionResult wbs_detect(std::span<const double> y, const IntervalSet& intervals, double tau);

/// Plain binary segmentation: wbs_detect with the single interval (0, n].
DetectionResult bs_detect(std::span<const double> y, double tau);

/// c_tau * sigma * sqrt(log(n)).
double default_tau(double sigma, int n, double c_tau = 2.0);

/// ceil(16 (n/delta)^2 log(max(n/delta, e))).
int min_intervals(int n, int delta);

}  // namespace cpd
