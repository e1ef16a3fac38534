#include <atomic>

#include "cpd/kernels.hpp"

namespace cpd::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(CPD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{best_available()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

Isa best_available() noexcept { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

Isa active() noexcept { return current().load(std::memory_order_relaxed); }

Isa select(Isa isa) noexcept {
  if (isa == Isa::avx2 && !cpu_has_avx2()) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
  return isa;
}

void cusum_values(std::span<const double> sums, int s, int e, std::span<double> out) {
#if defined(CPD_HAVE_AVX2)
  if (active() == Isa::avx2) return avx2::cusum_values(sums, s, e, out);
#endif
  scalar::cusum_values(sums, s, e, out);
}

ArgmaxAbs cusum_argmax(std::span<const double> sums, int s, int e) {
#if defined(CPD_HAVE_AVX2)
  if (active() == Isa::avx2) return avx2::cusum_argmax(sums, s, e);
#endif
  return scalar::cusum_argmax(sums, s, e);
}

BestStart segment_min(std::span<const double> cost, std::span<const double> sums,
                      std::span<const double> sq, int j) {
#if defined(CPD_HAVE_AVX2)
  if (active() == Isa::avx2) return avx2::segment_min(cost, sums, sq, j);
#endif
  return scalar::segment_min(cost, sums, sq, j);
}

}  // namespace cpd::kernels
