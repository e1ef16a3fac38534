#pragma once

#include <optional>
#include <span>

#include "cpd/l0.hpp"
#include "cpd/wbs.hpp"

namespace cpd {

/// Method choice plus optional overrides; anything unset is filled from the
/// data (sigma) or from the default tuning rules.
struct DetectorConfig {
  Method method = Method::l0;
  std::optional<double> sigma;       // noise scale; estimated from the data when unset
  std::optional<double> lambda;      // l0 penalty
  double c_lambda = 2.0;
  std::optional<double> tau;         // bs/wbs threshold
  double c_tau = 2.0;
  std::optional<int> intervals;      // wbs: number of random intervals
  std::optional<int> max_len;        // wbs: interval length cap
  std::optional<int> spacing_hint;   // wbs: minimal spacing used for the default M (n/10 when unset)
  int max_intervals = 50000;         // wbs: upper cap on the default M
  bool prune = false;                // l0: candidate pruning
};

/// Parameters actually used for one run.
struct ResolvedParams {
  double sigma = 0.0;
  double penalty = 0.0;  // lambda for l0, tau for bs/wbs
  int intervals = 0;     // wbs only
  std::optional<int> max_len;
};

/// Sigma used for the default tuning when the given or estimated scale is 0:
/// 1e-6 * max(1, max |y|), so thresholds stay positive on noiseless input.
double sigma_floor(std::span<const double> y);

ResolvedParams resolve_params(std::span<const double> y, const DetectorConfig& config);

/// Runs the configured detector; `interval_seed` drives the WBS interval draw.
DetectionResult run_detector(std::span<const double> y, const DetectorConfig& config, Seed interval_seed,
                             ResolvedParams* resolved = nullptr);

}  // namespace cpd
