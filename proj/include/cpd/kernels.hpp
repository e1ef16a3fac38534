#pragma once

// Data-parallel inner loops shared by the CUSUM scan, WBS and the l0 dynamic
// program. Every kernel has a scalar reference and, on x86-64, an AVX2 variant
// chosen at runtime. Variants perform the same IEEE operations in the same
// order per element, so their results are bit-identical.

#include <span>
#include <string_view>

namespace cpd::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Best instruction set supported by both the build and the running CPU.
Isa best_available() noexcept;
/// Currently selected variant (defaults to best_available()).
Isa active() noexcept;
/// Forces a variant; an unavailable one falls back to scalar. Returns the
/// variant actually installed. Not thread-safe against concurrent kernel calls.
Isa select(Isa isa) noexcept;

struct ArgmaxAbs {
  int location;  // t maximising |CUSUM|, smallest t on ties
  double value;  // |CUSUM| at location
};

struct BestStart {
  int start;     // i minimising cost[i] + SSE(i+1..j), smallest i on ties
  double value;
};

// `sums` is a prefix-sum array: sums[k] = x_1 + ... + x_k, sums[0] = 0.

/// out[t - s - 1] = CUSUM_t^{s,e} for t = s+1 .. e-1. Requires e - s >= 2.
void cusum_values(std::span<const double> sums, int s, int e, std::span<double> out);

/// Fused scan + argmax over t = s+1 .. e-1. Requires e - s >= 2.
ArgmaxAbs cusum_argmax(std::span<const double> sums, int s, int e);

/// min over i in [0, j) of cost[i] + max(0, (sq[j]-sq[i]) - (sums[j]-sums[i])^2 / (j-i)).
BestStart segment_min(std::span<const double> cost, std::span<const double> sums,
                      std::span<const double> sq, int j);

namespace scalar {
void cusum_values(std::span<const double> sums, int s, int e, std::span<double> out);
ArgmaxAbs cusum_argmax(std::span<const double> sums, int s, int e);
BestStart segment_min(std::span<const double> cost, std::span<const double> sums,
                      std::span<const double> sq, int j);
}  // namespace scalar

#if defined(CPD_HAVE_AVX2)
namespace avx2 {
void cusum_values(std::span<const double> sums, int s, int e, std::span<double> out);
ArgmaxAbs cusum_argmax(std::span<const double> sums, int s, int e);
BestStart segment_min(std::span<const double> cost, std::span<const double> sums,
                      std::span<const double> sq, int j);
}  // namespace avx2
#endif

}  // namespace cpd::kernels
