#include <cmath>
#include <limits>

#include "cpd/kernels.hpp"

namespace cpd::kernels::scalar {

namespace {

inline double cusum_at(const double* sums, double sd, double ed, double len, int t) {
  const double td = static_cast<double>(t);
  const double left_n = td - sd;
  const double right_n = ed - td;
  const double left = sums[t] - sums[static_cast<int>(sd)];
  const double right = sums[static_cast<int>(ed)] - sums[t];
  return std::sqrt(right_n / (len * left_n)) * left - std::sqrt(left_n / (len * right_n)) * right;
}

}  // namespace

void cusum_values(std::span<const double> sums, int s, int e, std::span<double> out) {
  const double sd = s, ed = e, len = ed - sd;
  for (int t = s + 1; t < e; ++t) {
    out[t - s - 1] = cusum_at(sums.data(), sd, ed, len, t);
  }
}

ArgmaxAbs cusum_argmax(std::span<const double> sums, int s, int e) {
  const double sd = s, ed = e, len = ed - sd;
  ArgmaxAbs best{s + 1, -1.0};
  for (int t = s + 1; t < e; ++t) {
    const double a = std::fabs(cusum_at(sums.data(), sd, ed, len, t));
    if (a > best.value) best = {t, a};
  }
  return best;
}

BestStart segment_min(std::span<const double> cost, std::span<const double> sums,
                      std::span<const double> sq, int j) {
  const double sj = sums[j], qj = sq[j], jd = j;
  BestStart best{0, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < j; ++i) {
    const double len = jd - static_cast<double>(i);
    const double d1 = sj - sums[i];
    double sse = (qj - sq[i]) - d1 * d1 / len;
    sse = sse > 0.0 ? sse : 0.0;
    const double c = cost[i] + sse;
    if (c < best.value) best = {i, c};
  }
  return best;
}

}  // namespace cpd::kernels::scalar
