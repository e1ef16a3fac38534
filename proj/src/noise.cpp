#include "cpd/noise.hpp"

#include <cmath>
#include <random>
#include <string>

#include "cpd/error.hpp"

namespace cpd {

namespace {

// splitmix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

NoiseFamily parse_noise_family(std::string_view name) {
  if (name == "gaussian") return NoiseFamily::gaussian;
  if (name == "uniform") return NoiseFamily::uniform;
  if (name == "rademacher") return NoiseFamily::rademacher;
  throw InvalidArgument("unknown noise family '" + std::string(name) + "'");
}

std::string_view to_string(NoiseFamily family) noexcept {
  switch (family) {
    case NoiseFamily::uniform:
      return "uniform";
    case NoiseFamily::rademacher:
      return "rademacher";
    case NoiseFamily::gaussian:
      break;
  }
  return "gaussian";
}

NoiseSpec::NoiseSpec(NoiseFamily f, double s) : family(f), sigma(s) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be finite and >= 0");
}

Seed derive_seed(Seed base, std::uint64_t index) noexcept {
  return Seed{mix64(mix64(base.value) ^ mix64(index + 0x632be59bd9b4e019ULL))};
}

std::vector<double> sample_noise(int n, const NoiseSpec& spec, Seed seed) {
  if (n < 0) throw InvalidArgument("negative length");
  std::vector<double> eps(static_cast<std::size_t>(n), 0.0);
  if (spec.sigma == 0.0) return eps;

  std::mt19937_64 engine(mix64(seed.value));
  switch (spec.family) {
    case NoiseFamily::gaussian: {
      std::normal_distribution<double> dist(0.0, spec.sigma);
      for (double& x : eps) x = dist(engine);
      break;
    }
    case NoiseFamily::uniform: {
      const double half_width = spec.sigma * std::sqrt(3.0);
      std::uniform_real_distribution<double> dist(-half_width, half_width);
      for (double& x : eps) x = dist(engine);
      break;
    }
    case NoiseFamily::rademacher:
      for (double& x : eps) x = (engine() >> 63) ? spec.sigma : -spec.sigma;
      break;
  }
  return eps;
}

std::vector<double> sample(const PiecewiseSignal& signal, const NoiseSpec& spec, Seed seed) {
  std::vector<double> y = signal.evaluate();
  if (spec.sigma == 0.0) return y;
  const std::vector<double> eps = sample_noise(signal.size(), spec, seed);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += eps[i];
  return y;
}

}  // namespace cpd
