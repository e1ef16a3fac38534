#pragma once

#include <utility>
#include <vector>

namespace cpd {

/// Piecewise-constant mean function on {1, ..., n}.
///
/// Change points follow the "last index of a segment" convention: the mean
/// is levels[k] on (eta_k, eta_{k+1}] with eta_0 = 0 and eta_{K+1} = n, so
/// the value changes between eta_k and eta_k + 1.
class PiecewiseSignal {
 public:
  /// Validates and stores the signal. Throws InvalidArgument when change
  /// points are not strictly increasing inside [1, n-1], when the level count
  /// is not K+1, or when two adjacent levels compare equal.
  PiecewiseSignal(int n, std::vector<int> change_points, std::vector<double> levels);

  int size() const noexcept { return n_; }
  int num_change_points() const noexcept { return static_cast<int>(change_points_.size()); }
  const std::vector<int>& change_points() const noexcept { return change_points_; }
  const std::vector<double>& levels() const noexcept { return levels_; }

  /// f_1..f_n, stored 0-based.
  std::vector<double> evaluate() const;

  /// Smallest segment length, boundaries included. Equals n when K = 0.
  int min_spacing() const noexcept;
  /// |levels[k] - levels[k-1]| for k in 1..K.
  double jump(int k) const;
  double min_jump() const;
  double snr(double sigma) const;

  /// Same change points, every level multiplied by `factor` (> 0).
  PiecewiseSignal scaled(double factor) const;

 private:
  int n_;
  std::vector<int> change_points_;
  std::vector<double> levels_;
};

PiecewiseSignal make_signal(int n, std::vector<int> change_points, std::vector<double> levels);

/// Zero everywhere except `height` at position l (1-based).
PiecewiseSignal spike_signal(int n, int l, double height);

/// Two single-change-point signals with the jump `kappa` placed at `spacing`
/// and at `spacing + shift` respectively.
std::pair<PiecewiseSignal, PiecewiseSignal> two_point_pair(int n, int spacing, int shift,
                                                           double kappa);

/// K change points with alternating jumps +kappa, -kappa starting from level 0.
/// Without `spacing` (0) the points are evenly spread, eta_k = floor(k n / (K+1));
/// with it they sit at k * spacing and the last segment absorbs the remainder.
PiecewiseSignal staircase_signal(int n, int num_change_points, double kappa, int spacing = 0);

}  // namespace cpd
