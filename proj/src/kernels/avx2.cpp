#include <immintrin.h>

#include <cmath>
#include <limits>

#include "cpd/kernels.hpp"

namespace cpd::kernels::avx2 {

namespace {

constexpr int kLanes = 4;

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

// Lanes hold the CUSUM at t, t+1, t+2, t+3.
inline __m256d cusum_block(const double* sums, __m256d sd, __m256d ed, __m256d len,
                           __m256d s_sum, __m256d e_sum, int t) {
  const __m256d td = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(t)),
                                   _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
  const __m256d left_n = _mm256_sub_pd(td, sd);
  const __m256d right_n = _mm256_sub_pd(ed, td);
  const __m256d st = _mm256_loadu_pd(sums + t);
  const __m256d left = _mm256_sub_pd(st, s_sum);
  const __m256d right = _mm256_sub_pd(e_sum, st);
  const __m256d wl = _mm256_sqrt_pd(_mm256_div_pd(right_n, _mm256_mul_pd(len, left_n)));
  const __m256d wr = _mm256_sqrt_pd(_mm256_div_pd(left_n, _mm256_mul_pd(len, right_n)));
  return _mm256_sub_pd(_mm256_mul_pd(wl, left), _mm256_mul_pd(wr, right));
}

inline double cusum_tail(const double* sums, double sd, double ed, double len, int s, int e,
                         int t) {
  const double td = static_cast<double>(t);
  const double left_n = td - sd;
  const double right_n = ed - td;
  const double left = sums[t] - sums[s];
  const double right = sums[e] - sums[t];
  return std::sqrt(right_n / (len * left_n)) * left - std::sqrt(left_n / (len * right_n)) * right;
}

}  // namespace

void cusum_values(std::span<const double> sums, int s, int e, std::span<double> out) {
  const double* p = sums.data();
  const double sdd = s, edd = e, lend = edd - sdd;
  const __m256d sd = _mm256_set1_pd(sdd), ed = _mm256_set1_pd(edd), len = _mm256_set1_pd(lend);
  const __m256d s_sum = _mm256_set1_pd(p[s]), e_sum = _mm256_set1_pd(p[e]);
  int t = s + 1;
  for (; t + kLanes <= e; t += kLanes) {
    _mm256_storeu_pd(out.data() + (t - s - 1), cusum_block(p, sd, ed, len, s_sum, e_sum, t));
  }
  for (; t < e; ++t) out[t - s - 1] = cusum_tail(p, sdd, edd, lend, s, e, t);
}

ArgmaxAbs cusum_argmax(std::span<const double> sums, int s, int e) {
  const double* p = sums.data();
  const double sdd = s, edd = e, lend = edd - sdd;
  const __m256d sd = _mm256_set1_pd(sdd), ed = _mm256_set1_pd(edd), len = _mm256_set1_pd(lend);
  const __m256d s_sum = _mm256_set1_pd(p[s]), e_sum = _mm256_set1_pd(p[e]);

  ArgmaxAbs best{s + 1, -1.0};
  int t = s + 1;
  if (t + kLanes <= e) {
    __m256d best_v = _mm256_set1_pd(-1.0);
    __m256d best_t = _mm256_setzero_pd();
    const __m256d step = _mm256_set1_pd(kLanes);
    __m256d tv = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(t)),
                               _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
    for (; t + kLanes <= e; t += kLanes) {
      const __m256d a = abs_pd(cusum_block(p, sd, ed, len, s_sum, e_sum, t));
      const __m256d gt = _mm256_cmp_pd(a, best_v, _CMP_GT_OQ);
      best_v = _mm256_blendv_pd(best_v, a, gt);
      best_t = _mm256_blendv_pd(best_t, tv, gt);
      tv = _mm256_add_pd(tv, step);
    }
    alignas(32) double vals[kLanes];
    alignas(32) double locs[kLanes];
    _mm256_store_pd(vals, best_v);
    _mm256_store_pd(locs, best_t);
    for (int lane = 0; lane < kLanes; ++lane) {
      const int loc = static_cast<int>(locs[lane]);
      if (vals[lane] > best.value || (vals[lane] == best.value && loc < best.location)) {
        best = {loc, vals[lane]};
      }
    }
  }
  for (; t < e; ++t) {
    const double a = std::fabs(cusum_tail(p, sdd, edd, lend, s, e, t));
    if (a > best.value) best = {t, a};
  }
  return best;
}

BestStart segment_min(std::span<const double> cost, std::span<const double> sums,
                      std::span<const double> sq, int j) {
  const double* c = cost.data();
  const double* ps = sums.data();
  const double* pq = sq.data();
  const double sjd = ps[j], qjd = pq[j], jdd = j;

  BestStart best{0, std::numeric_limits<double>::infinity()};
  int i = 0;
  if (kLanes <= j) {
    const __m256d sj = _mm256_set1_pd(sjd), qj = _mm256_set1_pd(qjd), jd = _mm256_set1_pd(jdd);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d step = _mm256_set1_pd(kLanes);
    __m256d iv = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    __m256d best_v = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d best_i = _mm256_setzero_pd();
    for (; i + kLanes <= j; i += kLanes) {
      const __m256d len = _mm256_sub_pd(jd, iv);
      const __m256d d1 = _mm256_sub_pd(sj, _mm256_loadu_pd(ps + i));
      const __m256d d2 = _mm256_sub_pd(qj, _mm256_loadu_pd(pq + i));
      __m256d sse = _mm256_sub_pd(d2, _mm256_div_pd(_mm256_mul_pd(d1, d1), len));
      sse = _mm256_max_pd(sse, zero);
      const __m256d v = _mm256_add_pd(_mm256_loadu_pd(c + i), sse);
      const __m256d lt = _mm256_cmp_pd(v, best_v, _CMP_LT_OQ);
      best_v = _mm256_blendv_pd(best_v, v, lt);
      best_i = _mm256_blendv_pd(best_i, iv, lt);
      iv = _mm256_add_pd(iv, step);
    }
    alignas(32) double vals[kLanes];
    alignas(32) double locs[kLanes];
    _mm256_store_pd(vals, best_v);
    _mm256_store_pd(locs, best_i);
    for (int lane = 0; lane < kLanes; ++lane) {
      const int loc = static_cast<int>(locs[lane]);
      if (vals[lane] < best.value || (vals[lane] == best.value && loc < best.start)) {
        best = {loc, vals[lane]};
      }
    }
  }
  for (; i < j; ++i) {
    const double len = jdd - static_cast<double>(i);
    const double d1 = sjd - ps[i];
    double sse = (qjd - pq[i]) - d1 * d1 / len;
    sse = sse > 0.0 ? sse : 0.0;
    const double v = c[i] + sse;
    if (v < best.value) best = {i, v};
  }
  return best;
}

}  // namespace cpd::kernels::avx2
