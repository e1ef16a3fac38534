#include "cpd/detector.hpp"

#include <algorithm>
#include <cmath>

#include "cpd/error.hpp"
#include "cpd/metrics.hpp"

namespace cpd {

double sigma_floor(std::span<const double> y) {
  double scale = 1.0;
  for (double v : y) scale = std::max(scale, std::fabs(v));
  return 1e-6 * scale;
}

ResolvedParams resolve_params(std::span<const double> y, const DetectorConfig& config) {
  const int n = static_cast<int>(y.size());
  if (n < 2) throw InvalidArgument("detection needs at least two observations");
  ResolvedParams p;
  p.sigma = config.sigma ? *config.sigma : estimate_sigma(y);
  if (!(p.sigma >= 0.0)) throw InvalidArgument("sigma must be >= 0");
  const double tuning_sigma = p.sigma > 0.0 ? p.sigma : sigma_floor(y);

  switch (config.method) {
    case Method::l0:
      p.penalty = config.lambda ? *config.lambda : default_lambda(tuning_sigma, n, config.c_lambda);
      break;
    case Method::bs:
      p.penalty = config.tau ? *config.tau : default_tau(tuning_sigma, n, config.c_tau);
      break;
    case Method::wbs: {
      p.penalty = config.tau ? *config.tau : default_tau(tuning_sigma, n, config.c_tau);
      if (config.intervals) {
        p.intervals = *config.intervals;
      } else {
        const int spacing = std::clamp(config.spacing_hint.value_or(std::max(1, n / 10)), 1, n);
        const double ratio = static_cast<double>(n) / spacing;
        // Compare in floating point first: min_intervals overflows int for tiny spacings.
        const double wanted = 16.0 * ratio * ratio * std::log(std::max(ratio, std::exp(1.0)));
        p.intervals = wanted >= config.max_intervals ? config.max_intervals : min_intervals(n, spacing);
      }
      p.max_len = config.max_len;
      break;
    }
  }
  return p;
}

DetectionResult run_detector(std::span<const double> y, const DetectorConfig& config, Seed interval_seed,
                             ResolvedParams* resolved) {
  const ResolvedParams p = resolve_params(y, config);
  if (resolved) *resolved = p;
  const int n = static_cast<int>(y.size());
  switch (config.method) {
    case Method::l0: {
      const L0Result fit = solve_l0(y, p.penalty, L0Options{config.prune});
      DetectionResult out;
      out.method = Method::l0;
      out.tau = p.penalty;
      out.change_points = fit.segmentation.boundaries();
      return out;
    }
    case Method::bs:
      return bs_detect(y, p.penalty);
    case Method::wbs:
      return wbs_detect(y, sample_intervals(n, p.intervals, interval_seed, p.max_len), p.penalty);
  }
  throw InvalidArgument("unknown method");
}

}  // namespace cpd
