// cpd: offline mean change point localisation and Monte Carlo experiments.
//
//   cpd detect   --input series.txt --method wbs
//   cpd simulate --n 1000 --k 3 --kappa 2 --sigma 1 --seed 7
//   cpd sweep    --n 500 --layout spike --snr-grid 1,2,4 --reps 200 --method l0
//   cpd rate     --n 2000 --k 3 --kappa 2 --method wbs --c-eps-grid 2,4,8
//
// Exit codes: 0 success, 2 usage error, 3 input parse error, 1 anything else.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cpd/detector.hpp"
#include "cpd/error.hpp"
#include "cpd/experiments.hpp"
#include "cpd/io.hpp"
#include "cpd/kernels.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 20190101;

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kParse = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  int threads = 1;
  std::string isa = "auto";
};

struct MethodOptions {
  std::string method = "l0";
  std::optional<double> lambda;
  std::optional<double> tau;
  std::optional<int> intervals;
  std::optional<int> max_len;
  std::optional<double> sigma;
  std::optional<int> delta;
  double c_lambda = 2.0;
  double c_tau = 2.0;
  bool prune = false;
};

struct SignalOptions {
  int n = 1000;
  int k = 1;
  double kappa = 1.0;
  double sigma = 1.0;
  std::string noise = "gaussian";
  std::string layout = "staircase";
  int spacing = 0;
  std::string signal_json;
};

struct ExperimentOptions {
  int reps = 100;
  std::string snr_grid;
  std::string c_eps_grid = "1,2,4,8,16";
  std::string summary;
  bool timing = false;
  bool scaling = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--seed", o.seed, "Seed for all randomness")->capture_default_str();
  cmd->add_option("--out", o.out, "Output path (default: stdout)");
  cmd->add_option("--threads", o.threads, "Worker threads (<= 0: all cores)")->capture_default_str();
  cmd->add_option("--isa", o.isa, "Kernel variant")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
      ->capture_default_str();
}

void add_method(CLI::App* cmd, MethodOptions& o) {
  cmd->add_option("--method", o.method, "Detector")->check(CLI::IsMember({"l0", "bs", "wbs"}))->capture_default_str();
  cmd->add_option("--lambda", o.lambda, "l0 penalty (default c_lambda sigma^2 log n)");
  cmd->add_option("--tau", o.tau, "bs/wbs threshold (default c_tau sigma sqrt(log n))");
  cmd->add_option("--intervals", o.intervals, "wbs: number of random intervals");
  cmd->add_option("--max-len", o.max_len, "wbs: interval length cap");
  cmd->add_option("--c-lambda", o.c_lambda, "Penalty constant")->capture_default_str();
  cmd->add_option("--c-tau", o.c_tau, "Threshold constant")->capture_default_str();
  cmd->add_flag("--prune", o.prune, "l0: prune start candidates");
}

void add_signal(CLI::App* cmd, SignalOptions& o, bool with_layout) {
  cmd->add_option("--n", o.n, "Signal length")->capture_default_str();
  cmd->add_option("--k", o.k, "Number of change points")->capture_default_str();
  cmd->add_option("--kappa", o.kappa, "Jump size (spike height for --layout spike)")->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "Noise scale")->capture_default_str();
  cmd->add_option("--noise", o.noise, "Noise family")
      ->check(CLI::IsMember({"gaussian", "uniform", "rademacher"}))
      ->capture_default_str();
  cmd->add_option("--delta", o.spacing, "Change point spacing (0: spread evenly)")->capture_default_str();
  cmd->add_option("--signal", o.signal_json, "Ground-truth signal JSON file (overrides --n/--k/--kappa)");
  if (with_layout) {
    cmd->add_option("--layout", o.layout, "Signal layout")
        ->check(CLI::IsMember({"staircase", "spike"}))
        ->capture_default_str();
  }
}

std::vector<double> parse_grid(const std::string& text, const char* flag) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("{}: '{}' is not a number", flag, item));
    }
  }
  if (grid.empty()) throw UsageError(fmt::format("{} must list at least one value", flag));
  return grid;
}

void apply_isa(const CommonOptions& o) {
  using cpd::kernels::Isa;
  if (o.isa == "scalar") cpd::kernels::select(Isa::scalar);
  if (o.isa == "avx2") cpd::kernels::select(Isa::avx2);
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cpd::DetectorConfig detector_config(const MethodOptions& m) {
  cpd::DetectorConfig d;
  d.method = cpd::parse_method(m.method);
  d.sigma = m.sigma;
  d.lambda = m.lambda;
  d.tau = m.tau;
  d.intervals = m.intervals;
  d.max_len = m.max_len;
  d.spacing_hint = m.delta;
  d.c_lambda = m.c_lambda;
  d.c_tau = m.c_tau;
  d.prune = m.prune;
  if (d.method == cpd::Method::l0 && (d.tau || d.intervals || d.max_len)) {
    throw UsageError("--tau, --intervals and --max-len do not apply to --method l0");
  }
  if (d.method != cpd::Method::l0 && (d.lambda || d.prune)) {
    throw UsageError("--lambda and --prune only apply to --method l0");
  }
  if (d.method == cpd::Method::bs && (d.intervals || d.max_len)) {
    throw UsageError("--intervals and --max-len only apply to --method wbs");
  }
  return d;
}

int run_detect(const CommonOptions& common, const MethodOptions& method, const std::string& input) {
  std::vector<double> y;
  if (input == "-") {
    y = cpd::io::read_series(std::cin);
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw UsageError("cannot open input " + input);
    y = cpd::io::read_series(in);
  }
  if (y.size() < 2) throw cpd::ParseError(1, "need at least two values");

  const cpd::DetectorConfig config = detector_config(method);
  cpd::ResolvedParams params;
  const auto result = cpd::run_detector(y, config, cpd::Seed{common.seed}, &params);

  using cpd::io::json_double;
  std::string params_json;
  if (config.method == cpd::Method::l0) {
    params_json = fmt::format("{{\"lambda\":{}}}", json_double(params.penalty));
  } else if (config.method == cpd::Method::bs) {
    params_json = fmt::format("{{\"tau\":{}}}", json_double(params.penalty));
  } else {
    params_json = fmt::format("{{\"tau\":{},\"intervals\":{},\"max_len\":{},\"seed\":{}}}", json_double(params.penalty),
                              params.intervals, params.max_len ? std::to_string(*params.max_len) : "null",
                              common.seed);
  }
  Output out(common.out);
  out.stream() << fmt::format("{{\"method\":\"{}\",\"n\":{},\"sigma_hat\":{},\"params\":{},\"change_points\":[{}]}}\n",
                              cpd::to_string(config.method), y.size(), json_double(params.sigma), params_json,
                              fmt::join(result.change_points, ","));
  return kOk;
}

cpd::PiecewiseSignal simulate_truth(const SignalOptions& s) {
  if (!s.signal_json.empty()) return cpd::io::signal_from_json(read_file(s.signal_json));
  return cpd::staircase_signal(s.n, s.k, s.kappa, s.spacing);
}

int run_simulate(const CommonOptions& common, const SignalOptions& s) {
  const cpd::PiecewiseSignal truth = simulate_truth(s);
  const cpd::NoiseSpec noise(cpd::parse_noise_family(s.noise), s.sigma);
  const auto y = cpd::sample(truth, noise, cpd::Seed{common.seed});
  const auto f = truth.evaluate();

  Output out(common.out);
  auto& os = out.stream();
  os << "# signal: " << cpd::io::signal_to_json(truth) << '\n';
  os << "# noise: " << cpd::to_string(noise.family) << " sigma=" << cpd::io::format_double(noise.sigma)
     << " seed=" << common.seed << '\n';
  os << "y,f\n";
  for (std::size_t i = 0; i < y.size(); ++i) {
    os << cpd::io::format_double(y[i]) << ',' << cpd::io::format_double(f[i]) << '\n';
  }
  return kOk;
}

cpd::ExperimentConfig experiment_config(const CommonOptions& common, const SignalOptions& s,
                                        const MethodOptions& m, const ExperimentOptions& e) {
  cpd::ExperimentConfig config;
  config.n = s.n;
  config.num_change_points = s.k;
  config.kappa = s.kappa;
  config.spacing = s.spacing;
  config.layout = s.layout == "spike" ? cpd::Layout::spike : cpd::Layout::staircase;
  if (!s.signal_json.empty()) {
    config.layout = cpd::Layout::explicit_signal;
    config.signal = cpd::io::signal_from_json(read_file(s.signal_json));
    config.n = config.signal->size();
  }
  config.noise = cpd::NoiseSpec(cpd::parse_noise_family(s.noise), s.sigma);
  config.detector = detector_config(m);
  config.replications = e.reps;
  config.base_seed = cpd::Seed{common.seed};
  config.record_timing = e.timing;
  config.validate();
  return config;
}

std::string config_json(const cpd::ExperimentConfig& c) {
  using cpd::io::json_double;
  const auto& d = c.detector;
  auto opt = [](const auto& v) -> std::string {
    if (!v) return "null";
    if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, double>) {
      return json_double(*v);
    } else {
      return std::to_string(*v);
    }
  };
  const char* layout = c.layout == cpd::Layout::spike ? "spike"
                       : c.layout == cpd::Layout::staircase ? "staircase"
                                                            : "explicit";
  std::string signal = c.signal ? cpd::io::signal_to_json(*c.signal) : "null";
  return fmt::format(
      "{{\"n\":{},\"layout\":\"{}\",\"k\":{},\"spacing\":{},\"kappa\":{},\"signal\":{},\"noise\":\"{}\",\"sigma\":{},"
      "\"method\":\"{}\",\"lambda\":{},\"c_lambda\":{},\"tau\":{},\"c_tau\":{},\"intervals\":{},\"max_len\":{},"
      "\"replications\":{},\"seed\":{}}}",
      c.n, layout, c.num_change_points, c.spacing, json_double(c.kappa), signal, cpd::to_string(c.noise.family),
      json_double(c.noise.sigma), cpd::to_string(d.method), opt(d.lambda), json_double(d.c_lambda), opt(d.tau),
      json_double(d.c_tau), opt(d.intervals), opt(d.max_len), c.replications, c.base_seed.value);
}

std::string summary_fields(const cpd::ExperimentSummary& s) {
  using cpd::io::json_double;
  return fmt::format(
      "\"replications\":{},\"success_rate\":{},\"k_correct_rate\":{},\"quantiles\":{{\"0.5\":{},\"0.9\":{},\"0.95\":{}}}",
      s.replications, json_double(s.success_rate), json_double(s.k_correct_rate), json_double(s.q50),
      json_double(s.q90), json_double(s.q95));
}

std::string summary_path(const CommonOptions& common, const ExperimentOptions& e) {
  if (!e.summary.empty()) return e.summary;
  if (!common.out.empty()) return common.out + ".summary.json";
  return {};
}

void write_summary(const std::string& path, const std::string& json) {
  if (path.empty()) {
    std::cerr << json << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open summary file " + path);
  out << json << '\n';
}

int run_sweep(const CommonOptions& common, const SignalOptions& s, const MethodOptions& m,
              const ExperimentOptions& e) {
  if (e.snr_grid.empty()) throw UsageError("sweep requires --snr-grid");
  const auto grid = parse_grid(e.snr_grid, "--snr-grid");
  const auto config = experiment_config(common, s, m, e);
  const auto points = cpd::sweep_snr(config, grid, e.reps, common.threads);

  std::vector<cpd::ExperimentRow> all;
  std::string point_json;
  for (const auto& p : points) {
    all.insert(all.end(), p.rows.begin(), p.rows.end());
    if (!point_json.empty()) point_json += ',';
    point_json += fmt::format("{{\"snr\":{},{}}}", cpd::io::json_double(p.snr), summary_fields(cpd::summarize(p.rows)));
  }
  {
    Output out(common.out);
    cpd::io::write_rows_csv(out.stream(), all);
  }
  write_summary(summary_path(common, e), fmt::format("{{\"config\":{},{},\"points\":[{}]}}", config_json(config),
                                                     summary_fields(cpd::summarize(all)), point_json));
  return kOk;
}

int run_rate(const CommonOptions& common, const SignalOptions& s, const MethodOptions& m, const ExperimentOptions& e) {
  const auto grid = parse_grid(e.c_eps_grid, "--c-eps-grid");
  const auto config = experiment_config(common, s, m, e);
  if (cpd::build_truth(config, 0).num_change_points() < 1) throw UsageError("rate needs at least one change point");
  const auto rows = cpd::run_experiment(config, common.threads);
  const auto fractions = cpd::rate_fractions(rows, grid, config.noise.sigma, config.n);
  {
    Output out(common.out);
    cpd::io::write_rows_csv(out.stream(), rows);
  }
  std::string fr;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) fr += ',';
    fr += fmt::format("{{\"c_eps\":{},\"fraction\":{}}}", cpd::io::json_double(grid[i]),
                      cpd::io::json_double(fractions[i]));
  }
  std::string scaling = "null";
  if (e.scaling) {
    const auto sc = cpd::rate_scaling(config, common.threads);
    using cpd::io::json_double;
    scaling = fmt::format("{{\"n\":{},\"p90_n\":{},\"p90_4n\":{},\"ratio\":{},\"bound\":{},\"pass\":{}}}", sc.n,
                          json_double(sc.p90_base), json_double(sc.p90_scaled), json_double(sc.ratio),
                          json_double(sc.bound), sc.pass ? "true" : "false");
  }
  write_summary(summary_path(common, e),
                fmt::format("{{\"config\":{},{},\"rate\":[{}],\"scaling\":{}}}", config_json(config),
                            summary_fields(cpd::summarize(rows)), fr, scaling));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offline mean change point localisation (l0 penalised DP, BS, WBS)"};
  app.require_subcommand(1);

  CommonOptions common;
  MethodOptions method;
  SignalOptions signal;
  ExperimentOptions experiment;
  std::string input;

  auto* detect = app.add_subcommand("detect", "Detect change points in a numeric series");
  add_common(detect, common);
  add_method(detect, method);
  detect->add_option("--input", input, "Series file, one value per line ('-' for stdin)")->required();
  detect->add_option("--sigma", method.sigma, "Noise scale (default: difference-based MAD estimate)");
  detect->add_option("--delta", method.delta, "wbs: minimal spacing hint for the default interval count");

  auto* simulate = app.add_subcommand("simulate", "Sample one series with its ground truth");
  add_common(simulate, common);
  add_signal(simulate, signal, false);

  auto* sweep = app.add_subcommand("sweep", "Success frequency across a signal-to-noise grid");
  auto* rate = app.add_subcommand("rate", "Localisation error against c_eps sigma^2 log(n) / kappa^2");
  for (auto* cmd : {sweep, rate}) {
    add_common(cmd, common);
    add_method(cmd, method);
    add_signal(cmd, signal, true);
    cmd->add_option("--reps", experiment.reps, "Replications")->capture_default_str();
    cmd->add_option("--summary", experiment.summary, "JSON summary path (default: <out>.summary.json or stderr)");
    cmd->add_flag("--timing", experiment.timing, "Record wall time in the ms column");
  }
  sweep->add_option("--snr-grid", experiment.snr_grid, "Comma-separated kappa sqrt(Delta)/sigma values")->required();
  rate->add_option("--c-eps-grid", experiment.c_eps_grid, "Comma-separated c_eps values")->capture_default_str();
  rate->add_flag("--scaling", experiment.scaling, "Also compare the 90th error percentile at n and 4n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    apply_isa(common);
    if (*detect) return run_detect(common, method, input);
    if (*simulate) return run_simulate(common, signal);
    if (*sweep) return run_sweep(common, signal, method, experiment);
    if (*rate) return run_rate(common, signal, method, experiment);
  } catch (const cpd::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const cpd::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
