#include "cpd/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "cpd/error.hpp"

namespace cpd {

namespace {

constexpr std::uint64_t kNoiseStream = 0;
constexpr std::uint64_t kIntervalStream = 1;
constexpr std::uint64_t kLayoutStream = 2;

int spike_position(const ExperimentConfig& config, int rep) {
  // Positions 2 .. n/4 keep the spike interior (two change points, Delta = 1).
  const int hi = std::max(2, config.n / 4);
  std::mt19937_64 engine(derive_seed(derive_seed(config.base_seed, static_cast<std::uint64_t>(rep)), kLayoutStream).value);
  return std::uniform_int_distribution<int>(2, hi)(engine);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (replications < 1) throw InvalidArgument("replications must be >= 1");
  switch (layout) {
    case Layout::staircase:
      if (n < 2) throw InvalidArgument("n must be >= 2");
      if (num_change_points < 0) throw InvalidArgument("number of change points must be >= 0");
      if (num_change_points > 0 && kappa == 0.0) throw InvalidArgument("kappa must be nonzero");
      if (spacing > 0 && static_cast<long long>(num_change_points + 1) * spacing > n) {
        throw InvalidArgument("change points with the requested spacing do not fit in n");
      }
      if (spacing == 0 && num_change_points > n - 1) throw InvalidArgument("too many change points for n");
      break;
    case Layout::spike:
      if (n < 3) throw InvalidArgument("spike layout needs n >= 3");
      if (kappa == 0.0) throw InvalidArgument("spike height must be nonzero");
      break;
    case Layout::explicit_signal:
      if (!signal) throw InvalidArgument("explicit layout requires a signal");
      if (signal->size() != n) throw InvalidArgument("explicit signal length differs from n");
      break;
  }
  if (detector.lambda && !(*detector.lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (detector.tau && !(*detector.tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (detector.intervals && *detector.intervals < 1) throw InvalidArgument("intervals must be >= 1");
  if (detector.max_len && *detector.max_len < 2) throw InvalidArgument("max_len must be >= 2");
  if (detector.method != Method::l0 && detector.lambda) throw InvalidArgument("lambda only applies to l0");
  if (detector.method == Method::l0 && (detector.tau || detector.intervals || detector.max_len)) {
    throw InvalidArgument("tau, intervals and max_len do not apply to l0");
  }
  if (detector.method == Method::bs && (detector.intervals || detector.max_len)) {
    throw InvalidArgument("intervals and max_len do not apply to bs");
  }
}

PiecewiseSignal build_truth(const ExperimentConfig& config, int rep) {
  switch (config.layout) {
    case Layout::staircase:
      return staircase_signal(config.n, config.num_change_points, config.kappa, config.spacing);
    case Layout::spike:
      return spike_signal(config.n, spike_position(config, rep), config.kappa);
    case Layout::explicit_signal:
      break;
  }
  if (!config.signal) throw InvalidArgument("explicit layout requires a signal");
  return *config.signal;
}

ExperimentRow run_replication(const ExperimentConfig& config, int rep) {
  config.validate();
  const Seed sub = derive_seed(config.base_seed, static_cast<std::uint64_t>(rep));
  const PiecewiseSignal truth = build_truth(config, rep);
  const std::vector<double> y = sample(truth, config.noise, derive_seed(sub, kNoiseStream));

  DetectorConfig detector = config.detector;
  if (!detector.sigma) detector.sigma = config.noise.sigma;
  const int spacing = truth.min_spacing();
  if (!detector.spacing_hint) detector.spacing_hint = spacing;
  if (detector.method == Method::wbs && !detector.max_len && config.cap_by_spacing) {
    detector.max_len = std::max(2, 2 * spacing);
  }

  const auto start = std::chrono::steady_clock::now();
  const DetectionResult found = run_detector(y, detector, derive_seed(sub, kIntervalStream));
  const auto stop = std::chrono::steady_clock::now();
  const LocalizationReport report = localization_report(found.change_points, truth);

  ExperimentRow row;
  row.rep = rep;
  row.method = detector.method;
  row.k_true = report.k_true;
  row.k_est = report.k_est;
  row.k_correct = report.k_correct;
  row.hausdorff = report.hausdorff;
  if (truth.num_change_points() == 0) {
    row.snr = std::numeric_limits<double>::quiet_NaN();
  } else if (config.noise.sigma == 0.0) {
    row.snr = std::numeric_limits<double>::infinity();
  } else {
    row.snr = truth.snr(config.noise.sigma);
  }
  if (report.k_correct) {
    row.max_err = report.max_error();
    double weighted = 0.0;
    for (int k = 1; k <= truth.num_change_points(); ++k) {
      const double jump = truth.jump(k);
      weighted = std::max(weighted, jump * jump * report.per_cp_error[static_cast<std::size_t>(k - 1)]);
    }
    row.weighted_err = weighted;
    row.success = 4 * row.max_err <= spacing || truth.num_change_points() == 0;
  }
  if (config.record_timing) row.ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return row;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  std::vector<ExperimentRow> rows(static_cast<std::size_t>(config.replications));
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, config.replications);

  if (threads == 1) {
    for (int rep = 0; rep < config.replications; ++rep) rows[static_cast<std::size_t>(rep)] = run_replication(config, rep);
    return rows;
  }

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (int rep = next++; rep < config.replications && !failed; rep = next++) {
      try {
        rows[static_cast<std::size_t>(rep)] = run_replication(config, rep);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<SweepPoint> sweep_snr(const ExperimentConfig& base, std::span<const double> snr_grid, int reps,
                                  int threads) {
  if (!(base.noise.sigma > 0.0)) throw InvalidArgument("an snr sweep needs sigma > 0");
  std::vector<SweepPoint> out;
  out.reserve(snr_grid.size());
  for (double target : snr_grid) {
    if (!(target > 0.0)) throw InvalidArgument("snr grid values must be positive");
    ExperimentConfig config = base;
    config.replications = reps;
    const PiecewiseSignal reference = build_truth(config, 0);
    if (reference.num_change_points() == 0) throw InvalidArgument("an snr sweep needs K >= 1");
    if (config.layout == Layout::explicit_signal) {
      config.signal = reference.scaled(target / reference.snr(config.noise.sigma));
    } else {
      // Staircase and spike jumps all equal |kappa|.
      const double sign = config.kappa < 0.0 ? -1.0 : 1.0;
      config.kappa = sign * target * config.noise.sigma / std::sqrt(static_cast<double>(reference.min_spacing()));
    }
    out.push_back({target, run_experiment(config, threads)});
  }
  return out;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw InvalidArgument("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0 || lo + 1 >= values.size()) return values[lo];
  if (values[lo] == values[lo + 1]) return values[lo];
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

ExperimentSummary summarize(std::span<const ExperimentRow> rows) {
  ExperimentSummary summary;
  summary.replications = static_cast<int>(rows.size());
  if (rows.empty()) return summary;
  std::vector<double> errors;
  errors.reserve(rows.size());
  int successes = 0, correct = 0;
  for (const auto& row : rows) {
    successes += row.success;
    correct += row.k_correct;
    errors.push_back(row.k_correct ? row.max_err : kNoMatch);
  }
  summary.success_rate = static_cast<double>(successes) / rows.size();
  summary.k_correct_rate = static_cast<double>(correct) / rows.size();
  summary.q50 = quantile(errors, 0.5);
  summary.q90 = quantile(errors, 0.9);
  summary.q95 = quantile(errors, 0.95);
  return summary;
}

std::vector<double> rate_fractions(std::span<const ExperimentRow> rows, std::span<const double> c_eps_grid,
                                   double sigma, int n) {
  if (n < 2) throw InvalidArgument("rate check needs n >= 2");
  const double scale = sigma * sigma * std::log(static_cast<double>(n));
  std::vector<double> out;
  out.reserve(c_eps_grid.size());
  for (double c : c_eps_grid) {
    int pass = 0;
    for (const auto& row : rows) pass += row.k_correct && row.weighted_err <= c * scale;
    out.push_back(rows.empty() ? 0.0 : static_cast<double>(pass) / rows.size());
  }
  return out;
}

std::vector<double> rate_check(const ExperimentConfig& config, std::span<const double> c_eps_grid, int threads) {
  if (build_truth(config, 0).num_change_points() < 1) throw InvalidArgument("rate check needs K >= 1");
  const auto rows = run_experiment(config, threads);
  return rate_fractions(rows, c_eps_grid, config.noise.sigma, config.n);
}

RateScaling rate_scaling(const ExperimentConfig& config, int threads) {
  if (config.layout != Layout::staircase || config.num_change_points < 1) {
    throw InvalidArgument("rate scaling needs a staircase layout with K >= 1");
  }
  ExperimentConfig base = config;
  if (base.spacing == 0) base.spacing = build_truth(config, 0).min_spacing();
  ExperimentConfig scaled = base;
  scaled.n = 4 * base.n;

  auto p90 = [threads](const ExperimentConfig& c) {
    const auto rows = run_experiment(c, threads);
    return summarize(rows).q90;
  };
  RateScaling out;
  out.n = base.n;
  out.p90_base = p90(base);
  out.p90_scaled = p90(scaled);
  const double logn = std::log(static_cast<double>(base.n));
  out.bound = 1.5 * std::log(4.0 * base.n) / logn;
  out.ratio = out.p90_scaled / std::max(out.p90_base, 1.0);
  out.pass = out.ratio <= out.bound;
  return out;
}

}  // namespace cpd
