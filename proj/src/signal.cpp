#include "cpd/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "cpd/error.hpp"

namespace cpd {

PiecewiseSignal::PiecewiseSignal(int n, std::vector<int> change_points, std::vector<double> levels)
    : n_(n), change_points_(std::move(change_points)), levels_(std::move(levels)) {
  if (n_ < 1) throw InvalidArgument(fmt::format("signal length must be positive, got {}", n_));
  if (levels_.size() != change_points_.size() + 1) {
    throw InvalidArgument(fmt::format("expected {} levels for {} change points, got {}",
                                      change_points_.size() + 1, change_points_.size(),
                                      levels_.size()));
  }
  int prev = 0;
  for (int cp : change_points_) {
    if (cp < 1 || cp > n_ - 1) {
      throw InvalidArgument(fmt::format("change point {} outside [1, {}]", cp, n_ - 1));
    }
    if (cp <= prev) throw InvalidArgument("change points must be strictly increasing");
    prev = cp;
  }
  for (double level : levels_) {
    if (!std::isfinite(level)) throw InvalidArgument("levels must be finite");
  }
  for (std::size_t k = 1; k < levels_.size(); ++k) {
    if (levels_[k] == levels_[k - 1]) {
      throw InvalidArgument(fmt::format("adjacent levels {} and {} are equal", k - 1, k));
    }
  }
}

std::vector<double> PiecewiseSignal::evaluate() const {
  std::vector<double> f(static_cast<std::size_t>(n_));
  int begin = 0;
  for (std::size_t k = 0; k <= change_points_.size(); ++k) {
    const int end = k < change_points_.size() ? change_points_[k] : n_;
    std::fill(f.begin() + begin, f.begin() + end, levels_[k]);
    begin = end;
  }
  return f;
}

int PiecewiseSignal::min_spacing() const noexcept {
  int prev = 0;
  int spacing = n_;
  for (int cp : change_points_) {
    spacing = std::min(spacing, cp - prev);
    prev = cp;
  }
  return std::min(spacing, n_ - prev);
}

double PiecewiseSignal::jump(int k) const {
  if (k < 1 || k > num_change_points()) {
    throw InvalidArgument(fmt::format("jump index {} outside [1, {}]", k, num_change_points()));
  }
  return std::fabs(levels_[k] - levels_[k - 1]);
}

double PiecewiseSignal::min_jump() const {
  if (change_points_.empty()) throw NoChangePoint();
  double kappa = jump(1);
  for (int k = 2; k <= num_change_points(); ++k) kappa = std::min(kappa, jump(k));
  return kappa;
}

double PiecewiseSignal::snr(double sigma) const {
  if (change_points_.empty()) throw NoChangePoint();
  if (!(sigma > 0.0)) throw InvalidArgument("snr requires sigma > 0");
  return min_jump() * std::sqrt(static_cast<double>(min_spacing())) / sigma;
}

PiecewiseSignal PiecewiseSignal::scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidArgument("scale factor must be positive");
  std::vector<double> levels = levels_;
  for (double& level : levels) level *= factor;
  return PiecewiseSignal(n_, change_points_, std::move(levels));
}

PiecewiseSignal make_signal(int n, std::vector<int> change_points, std::vector<double> levels) {
  return PiecewiseSignal(n, std::move(change_points), std::move(levels));
}

PiecewiseSignal spike_signal(int n, int l, double height) {
  if (l < 1 || l > n) throw InvalidArgument(fmt::format("spike position {} outside [1, {}]", l, n));
  if (height == 0.0) throw InvalidArgument("spike height must be nonzero");
  if (n == 1) throw InvalidArgument("a spike needs n >= 2");
  if (l == 1) return PiecewiseSignal(n, {1}, {height, 0.0});
  if (l == n) return PiecewiseSignal(n, {n - 1}, {0.0, height});
  return PiecewiseSignal(n, {l - 1, l}, {0.0, height, 0.0});
}

std::pair<PiecewiseSignal, PiecewiseSignal> two_point_pair(int n, int spacing, int shift,
                                                           double kappa) {
  if (spacing <= 0 || shift <= 0) throw InvalidArgument("spacing and shift must be positive");
  if (spacing + shift > n - 1) {
    throw InvalidArgument(
        fmt::format("spacing + shift = {} exceeds n - 1 = {}", spacing + shift, n - 1));
  }
  if (kappa == 0.0) throw InvalidArgument("kappa must be nonzero");
  return {PiecewiseSignal(n, {spacing}, {0.0, kappa}),
          PiecewiseSignal(n, {spacing + shift}, {0.0, kappa})};
}

PiecewiseSignal staircase_signal(int n, int num_change_points, double kappa, int spacing) {
  if (num_change_points < 0) throw InvalidArgument("number of change points must be >= 0");
  if (num_change_points > 0 && kappa == 0.0) throw InvalidArgument("kappa must be nonzero");
  const int k_total = num_change_points;
  std::vector<int> cps;
  cps.reserve(static_cast<std::size_t>(k_total));
  if (spacing > 0) {
    if (static_cast<long long>(k_total + 1) * spacing > n) {
      throw InvalidArgument(
          fmt::format("{} change points with spacing {} do not fit in n = {}", k_total, spacing, n));
    }
    for (int k = 1; k <= k_total; ++k) cps.push_back(k * spacing);
  } else {
    if (k_total > n - 1) throw InvalidArgument("too many change points for the signal length");
    for (int k = 1; k <= k_total; ++k) {
      cps.push_back(static_cast<int>(static_cast<long long>(k) * n / (k_total + 1)));
    }
  }
  std::vector<double> levels(static_cast<std::size_t>(k_total + 1));
  for (int k = 0; k <= k_total; ++k) levels[static_cast<std::size_t>(k)] = (k % 2 == 0) ? 0.0 : kappa;
  return PiecewiseSignal(n, std::move(cps), std::move(levels));
}

}  // namespace cpd
