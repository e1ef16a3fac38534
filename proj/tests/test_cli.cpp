#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpd/io.hpp"
#include "doctest.h"
#include "json.hpp"
#include "process.hpp"

namespace fs = std::filesystem;
using testing::run;

namespace {

const std::string kCli = CPD_CLI_PATH;

std::string cli(const std::string& args) { return "'" + kCli + "' " + args; }

std::string quiet(const std::string& args) { return cli(args) + " 2>/dev/null"; }

const fs::path& dir() {
  static const fs::path d = testing::scratch("cpd-cli-test");
  return d;
}

std::string path(const std::string& name) { return (dir() / name).string(); }

}  // namespace

TEST_CASE("detect on simple files") {
  std::string zeros;
  for (int i = 0; i < 100; ++i) zeros += "0\n";
  testing::write_file(path("zeros.txt"), zeros);
  auto r = run(quiet("detect --input " + path("zeros.txt") + " --method wbs"));
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["method"] == "wbs");
  CHECK(j["n"] == 100);
  CHECK(j["change_points"].empty());
  CHECK(j["params"].contains("tau"));
  CHECK(j["params"].contains("intervals"));

  std::string step;
  for (int i = 0; i < 100; ++i) step += i < 50 ? "0\n" : "5\n";
  testing::write_file(path("step.txt"), step);
  for (const char* method : {"l0", "bs", "wbs"}) {
    auto s = run(quiet("detect --input " + path("step.txt") + " --method " + method));
    REQUIRE(s.status == 0);
    auto js = nlohmann::json::parse(s.out);
    CHECK(js["change_points"] == nlohmann::json::array({50}));
    CHECK(js["sigma_hat"] == 0.0);
  }

  auto piped = run("cat " + path("step.txt") + " | " + quiet("detect --input - --method l0 --lambda 3"));
  REQUIRE(piped.status == 0);
  auto jp = nlohmann::json::parse(piped.out);
  CHECK(jp["params"]["lambda"] == 3.0);
  CHECK(jp["change_points"] == nlohmann::json::array({50}));
}

TEST_CASE("exit codes") {
  testing::write_file(path("bad.txt"), "0\n0\n0\n0\n0\n0\nnan\n0\n");
  auto bad = run(cli("detect --input " + path("bad.txt") + " 2>&1"));
  CHECK(bad.status == 3);
  CHECK(bad.out.find("line 7") != std::string::npos);

  testing::write_file(path("empty.txt"), "# nothing\n");
  CHECK(run(quiet("detect --input " + path("empty.txt"))).status == 3);
  testing::write_file(path("one.txt"), "1\n");
  CHECK(run(quiet("detect --input " + path("one.txt"))).status == 3);

  CHECK(run(quiet("")).status == 2);
  CHECK(run(quiet("frobnicate")).status == 2);
  CHECK(run(quiet("detect")).status == 2);
  CHECK(run(quiet("detect --input " + path("zeros.txt") + " --method pelt")).status == 2);
  CHECK(run(quiet("detect --input " + path("missing.txt"))).status == 2);
  CHECK(run(quiet("simulate --n 10 --k 20")).status == 2);
  CHECK(run(quiet("sweep --n 100 --snr-grid 0")).status == 2);
  CHECK(run(quiet("simulate --n 100 --method l0 --tau 2")).status != 0);
  CHECK(run(quiet("--help")).status == 0);
}

TEST_CASE("simulate without noise reproduces the signal") {
  auto r = run(quiet("simulate --n 100 --k 1 --kappa 2 --sigma 0 --seed 1"));
  REQUIRE(r.status == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# signal: {\"n\":100,\"change_points\":[50],\"levels\":[0,2]}");
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line == "y,f");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    CHECK(line.substr(0, comma) == line.substr(comma + 1));
    CHECK(line.substr(0, comma) == (rows < 50 ? "0" : "2"));
    ++rows;
  }
  CHECK(rows == 100);
}

TEST_CASE("simulate output round-trips through detect") {
  testing::write_file(path("truth.json"), "{\"n\":300,\"change_points\":[40,90,200],\"levels\":[0,3,-1,2]}");
  for (const char* method : {"l0", "bs", "wbs"}) {
    auto r = run(cli("simulate --signal " + path("truth.json") + " --sigma 0 --seed 9") + " 2>/dev/null | " +
                 quiet(std::string("detect --input - --method ") + method));
    REQUIRE(r.status == 0);
    CHECK(nlohmann::json::parse(r.out)["change_points"] == nlohmann::json::array({40, 90, 200}));
  }
  // With noise the staircase is still recovered at high snr.
  auto noisy = run(cli("simulate --n 600 --k 2 --kappa 4 --sigma 1 --seed 3") + " 2>/dev/null | " +
                   quiet("detect --input - --method l0"));
  REQUIRE(noisy.status == 0);
  auto cps = nlohmann::json::parse(noisy.out)["change_points"];
  REQUIRE(cps.size() == 2);
  CHECK(std::abs(cps[0].get<int>() - 200) <= 5);
  CHECK(std::abs(cps[1].get<int>() - 400) <= 5);
}

TEST_CASE("sweep and rate outputs") {
  auto sweep = run(quiet("sweep --n 200 --k 1 --sigma 1 --reps 1 --snr-grid 2,4,8 --method l0 --out " +
                         path("sweep.csv")));
  REQUIRE(sweep.status == 0);
  auto csv = testing::slurp(path("sweep.csv"));
  CHECK(csv.rfind(std::string(cpd::io::kRowHeader) + "\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  auto summary = nlohmann::json::parse(testing::slurp(path("sweep.csv.summary.json")));
  CHECK(summary["points"].size() == 3);
  CHECK(summary.contains("success_rate"));
  CHECK(summary["quantiles"].contains("0.9"));
  CHECK(summary["config"]["method"] == "l0");

  auto rate = run(quiet("rate --n 300 --k 2 --kappa 2 --sigma 1 --reps 20 --method wbs --c-eps-grid 1,4,16 --out " +
                        path("rate.csv") + " --summary " + path("rate.json")));
  REQUIRE(rate.status == 0);
  auto rj = nlohmann::json::parse(testing::slurp(path("rate.json")));
  REQUIRE(rj["rate"].size() == 3);
  double prev = 0.0;
  for (const auto& point : rj["rate"]) {
    CHECK(point["fraction"].get<double>() >= prev);
    prev = point["fraction"].get<double>();
  }
}

TEST_CASE("identical invocations give identical bytes") {
  const std::string runs[] = {
      "simulate --n 500 --k 3 --kappa 1 --sigma 1 --noise rademacher --seed 11",
      "sweep --n 300 --k 2 --sigma 1 --reps 8 --snr-grid 3,6 --method wbs --seed 5",
      "rate --n 300 --k 2 --kappa 1.5 --sigma 1 --reps 8 --method l0 --seed 5",
  };
  for (const auto& args : runs) {
    auto a = run(quiet(args));
    auto b = run(quiet(args));
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
  auto one = run(quiet(runs[1] + " --threads 1"));
  auto four = run(quiet(runs[1] + " --threads 4"));
  CHECK(one.out == four.out);
  auto scalar = run(quiet(runs[1] + " --isa scalar"));
  CHECK(one.out == scalar.out);
}
