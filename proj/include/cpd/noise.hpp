#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "cpd/signal.hpp"

namespace cpd {

enum class NoiseFamily { gaussian, uniform, rademacher };

NoiseFamily parse_noise_family(std::string_view name);
std::string_view to_string(NoiseFamily family) noexcept;

/// Noise family plus scale. Every family is calibrated to variance sigma^2.
struct NoiseSpec {
  NoiseFamily family = NoiseFamily::gaussian;
  double sigma = 1.0;

  NoiseSpec() = default;
  NoiseSpec(NoiseFamily f, double s);
};

struct Seed {
  std::uint64_t value = 0;
};

/// Stream-independent child seed; a pure function of (base, index).
Seed derive_seed(Seed base, std::uint64_t index) noexcept;

std::vector<double> sample_noise(int n, const NoiseSpec& spec, Seed seed);

/// Y = f + noise, deterministic in (signal, spec, seed).
std::vector<double> sample(const PiecewiseSignal& signal, const NoiseSpec& spec, Seed seed);

}  // namespace cpd
