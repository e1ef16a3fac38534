#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cpd/detector.hpp"
#include "cpd/metrics.hpp"
#include "cpd/noise.hpp"
#include "cpd/signal.hpp"

namespace cpd {

enum class Layout {
  staircase,  // K change points, alternating +/- kappa jumps
  spike,      // single spike of height kappa at a position drawn per replication
  explicit_signal,
};

struct ExperimentConfig {
  int n = 1000;
  Layout layout = Layout::staircase;
  int num_change_points = 1;
  int spacing = 0;  // staircase: 0 spreads the change points evenly
  double kappa = 1.0;
  std::optional<PiecewiseSignal> signal;  // required for Layout::explicit_signal

  NoiseSpec noise{};
  DetectorConfig detector{};
  int replications = 100;
  Seed base_seed{};
  bool record_timing = false;
  /// WBS without an explicit max_len caps intervals at twice the true
  /// minimal spacing.
  bool cap_by_spacing = true;

  /// Throws InvalidArgument on inconsistent settings.
  void validate() const;
};

/// Ground truth for one replication (the spike position depends on `rep`).
PiecewiseSignal build_truth(const ExperimentConfig& config, int rep);

struct ExperimentRow {
  int rep = 0;
  double snr = 0.0;  // kappa sqrt(Delta) / sigma of the truth; inf when sigma = 0, nan when K = 0
  Method method = Method::l0;
  int k_true = 0;
  int k_est = 0;
  bool k_correct = false;
  int max_err = -1;                   // -1 unless k_correct
  double hausdorff = kNoMatch;
  double weighted_err = kNoMatch;     // max_k kappa_k^2 |err_k|; kNoMatch unless k_correct
  double ms = 0.0;                    // wall time, 0 unless record_timing
  bool success = false;               // k_correct and max_err <= Delta / 4
};

ExperimentRow run_replication(const ExperimentConfig& config, int rep);

/// All replications in replication order. `threads` <= 0 uses the hardware
/// concurrency; the rows do not depend on the thread count.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config, int threads = 1);

struct SweepPoint {
  double snr;
  std::vector<ExperimentRow> rows;
};

/// For every grid value the jump size is rescaled so that kappa sqrt(Delta) /
/// sigma equals it, then `reps` replications are run with common seeds.
std::vector<SweepPoint> sweep_snr(const ExperimentConfig& base, std::span<const double> snr_grid, int reps,
                                  int threads = 1);

struct ExperimentSummary {
  int replications = 0;
  double success_rate = 0.0;
  double k_correct_rate = 0.0;
  // Quantiles of max_err, failures (K_hat != K) counted as +inf.
  double q50 = 0.0;
  double q90 = 0.0;
  double q95 = 0.0;
};

ExperimentSummary summarize(std::span<const ExperimentRow> rows);

/// Linear-interpolation quantile (type 7); +inf entries are allowed.
double quantile(std::vector<double> values, double p);

/// Per c_eps: fraction of rows with K_hat = K and
/// max_k kappa_k^2 |err_k| <= c_eps sigma^2 log n.
std::vector<double> rate_fractions(std::span<const ExperimentRow> rows, std::span<const double> c_eps_grid,
                                   double sigma, int n);

std::vector<double> rate_check(const ExperimentConfig& config, std::span<const double> c_eps_grid,
                               int threads = 1);

struct RateScaling {
  int n = 0;
  double p90_base = 0.0;    // 90th percentile of max_err at n
  double p90_scaled = 0.0;  // same at 4n
  double bound = 0.0;       // 1.5 log(4n) / log(n)
  double ratio = 0.0;       // p90_scaled / max(p90_base, 1)
  bool pass = false;        // ratio <= bound
};

/// Reruns a staircase config at n and 4n with K, spacing, kappa and sigma held
/// fixed (so the signal-to-noise ratio is unchanged) and compares the 90th
/// percentiles of the maximal localisation error. Errors are integers, so the
/// base percentile is floored at 1 before taking the ratio.
RateScaling rate_scaling(const ExperimentConfig& config, int threads = 1);

}  // namespace cpd
