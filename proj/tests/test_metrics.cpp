#include <cmath>
#include <random>
#include <set>

#include "cpd/error.hpp"
#include "cpd/metrics.hpp"
#include "cpd/noise.hpp"
#include "cpd/signal.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cpd;
using Ints = std::vector<int>;

TEST_CASE("hausdorff examples") {
  CHECK(hausdorff(Ints{4, 9}, Ints{9, 4}) == 0.0);
  CHECK(hausdorff(Ints{2, 8}, Ints{3}) == 5.0);
  CHECK(hausdorff(Ints{3}, Ints{2, 8}) == 5.0);
  CHECK_THROWS_AS(hausdorff(Ints{}, Ints{1}), InvalidArgument);
  CHECK_THROWS_AS(hausdorff(Ints{1}, Ints{}), InvalidArgument);
}

TEST_CASE("hausdorff against brute force") {
  std::mt19937_64 rng(13);
  auto draw = [&] {
    Ints s;
    const int k = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int i = 0; i < k; ++i) s.push_back(std::uniform_int_distribution<int>(1, 40)(rng));
    return s;
  };
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = draw(), b = draw(), c = draw();
    const double ab = hausdorff(a, b);
    CHECK(ab == oracle::hausdorff(a, b));
    CHECK(ab == hausdorff(b, a));
    CHECK(ab >= 0.0);
    std::set<int> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    CHECK((ab == 0.0) == (sa == sb));
    CHECK(hausdorff(a, c) <= ab + hausdorff(b, c));
  }
}

TEST_CASE("localization_report") {
  auto truth = make_signal(100, {20, 50, 80}, {0, 1, 0, 1});
  auto exact = localization_report(truth.change_points(), truth);
  CHECK(exact.k_correct);
  CHECK(exact.per_cp_error == Ints{0, 0, 0});
  CHECK(exact.hausdorff == 0.0);
  CHECK(exact.max_error() == 0);

  auto one = make_signal(100, {50}, {0, 1});
  auto off = localization_report(Ints{53}, one);
  CHECK(off.k_correct);
  CHECK(off.per_cp_error == Ints{3});
  CHECK(off.hausdorff == 3.0);

  auto none = localization_report(Ints{}, one);
  CHECK_FALSE(none.k_correct);
  CHECK(none.per_cp_error.empty());
  CHECK(none.hausdorff == kNoMatch);
  CHECK(std::isinf(none.hausdorff));

  auto flat = make_signal(100, {}, {2});
  auto null_ok = localization_report(Ints{}, flat);
  CHECK(null_ok.k_correct);
  CHECK(null_ok.hausdorff == 0.0);
  CHECK(null_ok.max_error() == 0);
  auto spurious = localization_report(Ints{40}, flat);
  CHECK_FALSE(spurious.k_correct);
  CHECK(spurious.hausdorff == kNoMatch);

  // Sorted matching, not nearest neighbour; unsorted input is accepted.
  auto shifted = localization_report(Ints{52, 21, 90}, truth);
  CHECK(shifted.per_cp_error == Ints{1, 2, 10});
  CHECK(shifted.max_error() == 10);
  CHECK(shifted.hausdorff == 10.0);
  auto wrong_count = localization_report(Ints{20, 50}, truth);
  CHECK_FALSE(wrong_count.k_correct);
  CHECK(wrong_count.hausdorff == 30.0);
}

TEST_CASE("estimate_sigma") {
  CHECK(estimate_sigma(std::vector<double>(50, 3.0)) == 0.0);
  CHECK(estimate_sigma(make_signal(50, {25}, {0, 9}).evaluate()) == 0.0);
  CHECK_THROWS_AS(estimate_sigma(std::vector<double>{1.0}), InvalidArgument);
  CHECK(estimate_sigma(std::vector<double>{0.0, 1.0}) == doctest::Approx(1.0 / (std::sqrt(2.0) * 0.6745)));

  const int n = 100000;
  auto y = sample_noise(n, NoiseSpec(NoiseFamily::gaussian, 1.0), Seed{20190101});
  CHECK(std::fabs(estimate_sigma(y) - 1.0) < 0.05);
  auto y3 = sample_noise(n, NoiseSpec(NoiseFamily::gaussian, 3.0), Seed{1});
  CHECK(std::fabs(estimate_sigma(y3) / 3.0 - 1.0) < 0.05);
}

TEST_CASE("estimate_sigma ignores a sparse set of jumps") {
  const int n = 10000;
  auto noise = sample_noise(n, NoiseSpec(NoiseFamily::gaussian, 1.0), Seed{77});
  const double base = estimate_sigma(noise);
  std::mt19937_64 rng(5);
  for (int k : {1, 10, 100, 500}) {
    std::vector<int> cps;
    for (int i = 1; i <= k; ++i) cps.push_back(i * n / (k + 1));
    std::vector<double> levels{0.0};
    for (int i = 0; i < k; ++i) levels.push_back(levels.back() + std::uniform_real_distribution<double>(1, 10)(rng));
    auto f = make_signal(n, cps, levels).evaluate();
    for (int i = 0; i < n; ++i) f[i] += noise[i];
    CHECK(std::fabs(estimate_sigma(f) / base - 1.0) < 0.10);
  }
}
