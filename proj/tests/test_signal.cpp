#include <cmath>
#include <random>

#include "cpd/error.hpp"
#include "cpd/signal.hpp"
#include "doctest.h"

using namespace cpd;
using Vec = std::vector<double>;

TEST_CASE("make_signal builds and validates") {
  auto s = make_signal(6, {3}, {0, 1});
  CHECK(s.evaluate() == Vec{0, 0, 0, 1, 1, 1});
  CHECK(s.num_change_points() == 1);

  auto c = make_signal(4, {}, {5});
  CHECK(c.num_change_points() == 0);
  CHECK(c.evaluate() == Vec{5, 5, 5, 5});

  CHECK_THROWS_AS(make_signal(4, {2}, {1, 1}), InvalidArgument);
  CHECK_THROWS_AS(make_signal(6, {3, 3}, {0, 1, 2}), InvalidArgument);
  CHECK_THROWS_AS(make_signal(6, {4, 2}, {0, 1, 2}), InvalidArgument);
  CHECK_THROWS_AS(make_signal(6, {0}, {0, 1}), InvalidArgument);
  CHECK_THROWS_AS(make_signal(6, {6}, {0, 1}), InvalidArgument);
  CHECK_THROWS_AS(make_signal(6, {3}, {0}), InvalidArgument);
  CHECK_THROWS_AS(make_signal(6, {3}, {0, 1, 2}), InvalidArgument);
  CHECK_THROWS_AS(make_signal(0, {}, {1}), InvalidArgument);
}

TEST_CASE("evaluate looks up the segment level") {
  CHECK(make_signal(5, {2}, {0, 3}).evaluate() == Vec{0, 0, 3, 3, 3});
  CHECK(make_signal(3, {}, {-1}).evaluate() == Vec{-1, -1, -1});
  CHECK(make_signal(4, {1, 3}, {0, 2, 0}).evaluate() == Vec{0, 2, 2, 0});
}

TEST_CASE("spacing, jump and snr") {
  auto a = make_signal(10, {4}, {0, 2});
  CHECK(a.min_spacing() == 4);
  CHECK(a.min_jump() == 2.0);
  CHECK(a.snr(1.0) == doctest::Approx(4.0).epsilon(1e-15));

  auto c = make_signal(7, {}, {1});
  CHECK(c.min_spacing() == 7);
  CHECK_THROWS_AS(c.min_jump(), NoChangePoint);
  CHECK_THROWS_AS(c.snr(1.0), NoChangePoint);

  auto b = make_signal(9, {3, 6}, {0, 1, 5});
  CHECK(b.min_spacing() == 3);
  CHECK(b.min_jump() == 1.0);
  CHECK(b.jump(2) == 4.0);
  CHECK(b.snr(2.0) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  CHECK_THROWS_AS(b.snr(0.0), InvalidArgument);
  CHECK_THROWS_AS(b.jump(0), InvalidArgument);
  CHECK_THROWS_AS(b.jump(3), InvalidArgument);
}

TEST_CASE("spike_signal") {
  auto mid = spike_signal(5, 3, 2);
  CHECK(mid.evaluate() == Vec{0, 0, 2, 0, 0});
  CHECK(mid.change_points() == std::vector<int>{2, 3});

  auto first = spike_signal(5, 1, 2);
  CHECK(first.evaluate() == Vec{2, 0, 0, 0, 0});
  CHECK(first.change_points() == std::vector<int>{1});

  auto last = spike_signal(8, 8, -1);
  CHECK(last.evaluate() == Vec{0, 0, 0, 0, 0, 0, 0, -1});
  CHECK(last.change_points() == std::vector<int>{7});

  CHECK_THROWS_AS(spike_signal(5, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(spike_signal(5, 6, 1), InvalidArgument);
  CHECK_THROWS_AS(spike_signal(5, 2, 0), InvalidArgument);

  for (int l = 2; l < 20; ++l) {
    auto s = spike_signal(20, l, -0.75);
    CHECK(s.min_jump() == 0.75);
    CHECK(s.min_spacing() == 1);
  }
}

TEST_CASE("two_point_pair") {
  auto [p0, p1] = two_point_pair(10, 3, 2, 1.0);
  CHECK(p0.change_points() == std::vector<int>{3});
  CHECK(p1.change_points() == std::vector<int>{5});
  CHECK(p0.levels() == Vec{0, 1});
  CHECK(p1.levels() == Vec{0, 1});

  CHECK_THROWS_AS(two_point_pair(6, 5, 1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(two_point_pair(6, 0, 1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(two_point_pair(6, 2, 0, 1.0), InvalidArgument);

  auto [q0, q1] = two_point_pair(8, 2, 3, 0.5);
  CHECK(q0.change_points() == std::vector<int>{2});
  CHECK(q1.change_points() == std::vector<int>{5});
  CHECK(q1.min_jump() == 0.5);
}

TEST_CASE("staircase_signal") {
  auto even = staircase_signal(2000, 3, 2.0);
  CHECK(even.change_points() == std::vector<int>{500, 1000, 1500});
  CHECK(even.levels() == Vec{0, 2, 0, 2});
  CHECK(even.min_spacing() == 500);

  auto fixed = staircase_signal(500, 1, 1.0, 100);
  CHECK(fixed.change_points() == std::vector<int>{100});
  CHECK(fixed.min_spacing() == 100);

  CHECK(staircase_signal(10, 0, 1.0).num_change_points() == 0);
  CHECK_THROWS_AS(staircase_signal(10, 3, 1.0, 4), InvalidArgument);
}

TEST_CASE("random signals respect the structural properties") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 60)(rng);
    std::vector<int> cps;
    for (int t = 1; t < n; ++t)
      if (std::bernoulli_distribution(0.2)(rng)) cps.push_back(t);
    Vec levels;
    std::normal_distribution<double> nd;
    for (std::size_t k = 0; k <= cps.size(); ++k) {
      double v = nd(rng);
      while (!levels.empty() && v == levels.back()) v = nd(rng);
      levels.push_back(v);
    }
    auto s = make_signal(n, cps, levels);
    auto f = s.evaluate();
    int prev = 0;
    for (std::size_t k = 0; k <= cps.size(); ++k) {
      int end = k < cps.size() ? cps[k] : n;
      for (int i = prev + 1; i <= end; ++i) CHECK(f[i - 1] == levels[k]);
      if (k < cps.size()) CHECK(f[end - 1] != f[end]);
      prev = end;
    }
    const int K = s.num_change_points();
    CHECK(static_cast<long>(s.min_spacing()) * K <= n);
    if (K > 0) {
      for (double a : {0.1, 3.0, 17.5}) {
        CHECK(s.scaled(a).snr(1.3 * a) == doctest::Approx(s.snr(1.3)).epsilon(1e-12));
      }
    }
  }
}
