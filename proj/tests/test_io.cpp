#include <cmath>
#include <sstream>

#include "cpd/detector.hpp"
#include "cpd/error.hpp"
#include "cpd/io.hpp"
#include "cpd/noise.hpp"
#include "cpd/signal.hpp"
#include "doctest.h"

using namespace cpd;
using Vec = std::vector<double>;

namespace {

Vec read(const std::string& text) {
  std::istringstream in(text);
  return io::read_series(in);
}

std::size_t failing_line(const std::string& text) {
  try {
    read(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("read_series formats") {
  CHECK(read("1\n2.5\n-3e2\n") == Vec{1, 2.5, -300});
  CHECK(read("# comment\n\n  4 \n+5\n\r\n6\r\n") == Vec{4, 5, 6});
  CHECK(read("value\n1\n2\n") == Vec{1, 2});
  CHECK(read("y,f\n1.5,0\n2.5,1\n") == Vec{1.5, 2.5});
  CHECK(read("# a header may follow comments\ny\n7\n") == Vec{7});
}

TEST_CASE("read_series errors carry the line number") {
  CHECK(failing_line("1\n2\n3\n4\n5\n6\nnan\n8\n") == 7);
  CHECK(failing_line("1\n2\nNaN\n") == 3);
  CHECK(failing_line("1\n2\ninf\n") == 3);
  CHECK(failing_line("1\nabc\n") == 2);
  CHECK(failing_line("header\nalso-text\n") == 2);
  CHECK(failing_line("1\n2x\n") == 2);
  CHECK_THROWS_AS(read(""), ParseError);
  CHECK_THROWS_AS(read("# only\n# comments\n"), ParseError);
  try {
    read("0\n0\n0\n0\n0\n0\nnan\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 7") != std::string::npos);
  }
}

TEST_CASE("number formatting") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(2.0) == "2");
  CHECK(io::format_double(INFINITY) == "inf");
  CHECK(io::format_double(-INFINITY) == "-inf");
  CHECK(io::format_double(NAN) == "nan");
  CHECK(io::json_double(NAN) == "null");
  CHECK(io::json_double(1.5) == "1.5");
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("signal json round trip") {
  auto s = make_signal(9, {3, 6}, {0.1, -1.0 / 3.0, 5});
  const std::string text = io::signal_to_json(s);
  CHECK(text == "{\"n\":9,\"change_points\":[3,6],\"levels\":[0.10000000000000001,-0.33333333333333331,5]}");
  auto back = io::signal_from_json(text);
  CHECK(back.size() == 9);
  CHECK(back.change_points() == s.change_points());
  CHECK(back.levels() == s.levels());
  CHECK_THROWS_AS(io::signal_from_json("{\"n\":9}"), InvalidArgument);
  CHECK_THROWS_AS(io::signal_from_json("not json"), InvalidArgument);
  CHECK_THROWS_AS(io::signal_from_json("{\"n\":4,\"change_points\":[2],\"levels\":[1,1]}"), InvalidArgument);
}

TEST_CASE("experiment rows as csv") {
  ExperimentRow ok;
  ok.rep = 0, ok.snr = 4.5, ok.method = Method::wbs, ok.k_true = 2, ok.k_est = 2, ok.k_correct = true;
  ok.max_err = 3, ok.hausdorff = 3.0;
  ExperimentRow miss;
  miss.rep = 1, miss.snr = 4.5, miss.k_true = 2, miss.k_est = 0;
  std::vector<ExperimentRow> rows{ok, miss};
  std::ostringstream out;
  io::write_rows_csv(out, rows);
  CHECK(out.str() ==
        "rep,snr,method,k_true,k_est,k_correct,max_err,hausdorff,ms\n"
        "0,4.5,wbs,2,2,1,3,3,0\n"
        "1,4.5,l0,2,0,0,-1,inf,0\n");
}

TEST_CASE("detector defaults") {
  auto f = make_signal(100, {50}, {0, 5}).evaluate();
  DetectorConfig l0;
  ResolvedParams p;
  auto r = run_detector(f, l0, Seed{1}, &p);
  CHECK(r.change_points == std::vector<int>{50});
  CHECK(p.sigma == 0.0);
  CHECK(p.penalty == doctest::Approx(default_lambda(sigma_floor(f), 100)));
  CHECK(sigma_floor(f) == doctest::Approx(5e-6));

  Vec zeros(100, 0.0);
  for (auto m : {Method::l0, Method::bs, Method::wbs}) {
    DetectorConfig c;
    c.method = m;
    CHECK(run_detector(zeros, c, Seed{1}).change_points.empty());
  }

  DetectorConfig wbs;
  wbs.method = Method::wbs;
  auto q = resolve_params(Vec(200, 1.0), wbs);
  CHECK(q.intervals == min_intervals(200, 20));
  CHECK_FALSE(q.max_len.has_value());
  wbs.spacing_hint = 1;
  CHECK(resolve_params(Vec(200, 1.0), wbs).intervals == wbs.max_intervals);
  wbs.intervals = 7;
  wbs.max_len = 9;
  auto q2 = resolve_params(Vec(200, 1.0), wbs);
  CHECK(q2.intervals == 7);
  CHECK(q2.max_len == 9);

  auto y = sample(make_signal(2000, {1000}, {0, 1}), NoiseSpec(NoiseFamily::gaussian, 2.0), Seed{4});
  DetectorConfig bs;
  bs.method = Method::bs;
  auto q3 = resolve_params(y, bs);
  CHECK(q3.sigma == doctest::Approx(2.0).epsilon(0.05));
  CHECK(q3.penalty == doctest::Approx(default_tau(q3.sigma, 2000, 2.0)));
  CHECK_THROWS_AS(resolve_params(Vec{1.0}, bs), InvalidArgument);
}
