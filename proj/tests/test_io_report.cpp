#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "rhex/baseline.hpp"
#include "rhex/csv.hpp"
#include "rhex/report.hpp"
#include "rhex/rng.hpp"

using namespace rhex;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("rhex_io_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

Box square_box(double lo, double hi) {
  Box b;
  b.dims = {Interval{lo, hi}, Interval{lo, hi}};
  return b;
}

}  // namespace

TEST_CASE("format_double emits shortest round-trip representations") {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const double v = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-6.0, 6.0));
    const std::string s = format_double(v);
    double back = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(res.ec == std::errc{});
    CHECK(back == v);
    CHECK(s.find(',') == std::string::npos);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-1.0) == "-1");
}

TEST_CASE("signal csv round-trip and validation") {
  TempDir tmp;
  const auto path = tmp.path / "sig.csv";
  ExcitationSignal s(std::vector<double>{0.25, -1.0, 0.125, 0.3333333333333333});
  write_signal_csv(path, s);
  const ExcitationSignal back = read_signal_csv(path);
  CHECK(back.samples() == s.samples());

  {
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,u");
  }

  std::ofstream bad(tmp.path / "bad.csv");
  bad << "k,u\n1,0.5\n3,0.5\n";
  bad.close();
  try {
    read_signal_csv(tmp.path / "bad.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  std::ofstream nonnum(tmp.path / "nonnum.csv");
  nonnum << "k,u\n1,abc\n";
  nonnum.close();
  try {
    read_signal_csv(tmp.path / "nonnum.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("column 2") != std::string::npos);
  }
}

TEST_CASE("numeric csv reader enforces headers and column counts") {
  TempDir tmp;
  std::ofstream out(tmp.path / "t.csv");
  out << "a,b\n1,2\n3\n";
  out.close();
  CHECK_THROWS_AS(read_numeric_csv(tmp.path / "t.csv", "x,y"), ParseError);
  CHECK_THROWS_AS(read_numeric_csv(tmp.path / "t.csv"), ParseError);  // ragged row
  CHECK_THROWS_AS(read_numeric_csv(tmp.path / "absent.csv"), IoError);
}

TEST_CASE("distribution csv round-trip") {
  TempDir tmp;
  Distribution d(2);
  Rng rng(5);
  for (int i = 0; i < 32; ++i) {
    const double p[2] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    d.append(p);
  }
  write_distribution_csv(tmp.path / "d.csv", d);
  const Distribution back = read_distribution_csv(tmp.path / "d.csv");
  REQUIRE(back.size() == d.size());
  CHECK(back.data() == d.data());
}

TEST_CASE("coverage against a fully visited psi set is exactly zero") {
  // Exact dyadic construction: a = 0.5, b = 1 lti plant can visit all four
  // corners of [-1,1]^2 with inputs in [-4,4].
  Distribution process(2);
  const double pts[][2] = {{-1, -1}, {0.5, 0}, {1, 1},  {-4, -3.5}, {-2.25, -4},
                           {1, -1},  {4, 3.5}, {2.25, 4}, {-1, 1}};
  for (const auto& p : pts) process.append(p);

  const int res[2] = {2, 2};
  const Distribution psi = build_psi_grid(square_box(-1, 1), res);
  const CoverageReport report =
      compute_coverage(process, psi, square_box(-1, 1), true, {});
  CHECK(report.j_true == 0.0);
  CHECK(report.fill_distance == 0.0);
  CHECK(report.primary_region_fraction() == 1.0);
}

TEST_CASE("constant-zero signal: fill distance matches a brute-force oracle") {
  // Points on the {u=0, y -> 0} segment.
  Distribution process(2);
  double y = 0.8;
  const double start[2] = {0.0, y};
  process.append(start);
  for (int k = 0; k < 60; ++k) {
    y *= 0.8;
    const double p[2] = {0.0, y};
    process.append(p);
  }
  const int res[2] = {7, 7};
  const Box box = square_box(-1, 1);
  const Distribution psi = build_psi_grid(box, res);
  const CoverageReport report = compute_coverage(process, psi, box, true, {});

  const Normalizer norm(box);
  const Distribution psi_n = norm.normalize(psi);
  const Distribution proc_n = norm.normalize(process);
  double expected = 0.0;
  for (std::size_t j = 0; j < psi_n.size(); ++j) {
    double best = 1e300;
    for (std::size_t o = 0; o < proc_n.size(); ++o) {
      const double dx = proc_n[o][0] - psi_n[j][0];
      const double dy = proc_n[o][1] - psi_n[j][1];
      best = std::min(best, std::hypot(dx, dy));
    }
    expected = std::max(expected, best);
  }
  CHECK(report.fill_distance == doctest::Approx(expected).epsilon(1e-12));
  CHECK(report.fill_distance > 0.3);  // corners are far from the segment
}

TEST_CASE("region fractions use closed containment in raw coordinates") {
  Distribution process(2);
  const double pts[][2] = {{0.25, 0.25}, {0.75, 0.75}, {0.5, 0.5}, {-0.5, 0.5}};
  for (const auto& p : pts) process.append(p);
  const int res[2] = {2, 2};
  const Distribution psi = build_psi_grid(square_box(-1, 1), res);

  std::vector<BoostRegion> regions;
  regions.push_back({square_box(0.25, 0.75), 4.0});
  regions.push_back({square_box(-1.0, 0.0), 2.0});
  const CoverageReport report =
      compute_coverage(process, psi, square_box(-1, 1), true, regions);
  REQUIRE(report.regions.size() == 2);
  CHECK(report.regions[0].fraction == doctest::Approx(0.75));
  CHECK(report.regions[1].fraction == doctest::Approx(0.0));
  CHECK(report.primary_region_fraction() == doctest::Approx(0.75));
}

TEST_CASE("uniform-random baseline statistics") {
  Rng rng(77);
  const Interval box{-1.0, 1.0};
  const ExcitationSignal s = generate_uniform_random(1000, box, rng);
  REQUIRE(s.size() == 1000);
  double mean = 0.0, lo = 1e300, hi = -1e300;
  for (double u : s.samples()) {
    mean += u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  mean /= 1000.0;
  CHECK(lo >= -1.0);
  CHECK(hi <= 1.0);
  // Mean within 3 sigma of the box midpoint; sigma = width/sqrt(12 n).
  const double sigma = 2.0 / std::sqrt(12.0 * 1000.0);
  CHECK(std::abs(mean - 0.0) < 3.0 * sigma);

  Rng rng_a(31), rng_b(31);
  CHECK(generate_uniform_random(100, box, rng_a).samples() ==
        generate_uniform_random(100, box, rng_b).samples());
}

TEST_CASE("aprbs holds stay within the configured range") {
  Rng rng(19);
  const Interval box{-1.0, 1.0};
  AprbsParams params{5, 10};
  const ExcitationSignal s = generate_aprbs(500, box, params, rng);
  REQUIRE(s.size() == 500);

  std::vector<int> runs;
  int run = 1;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == s[i - 1]) {
      ++run;
    } else {
      runs.push_back(run);
      run = 1;
    }
  }
  // Every completed run lies in [5,10]; the trailing run may be truncated.
  for (int r : runs) {
    CHECK(r >= 5);
    CHECK(r <= 10);
  }
  CHECK(run <= 10);
  for (double u : s.samples()) CHECK(box.contains(u));

  Rng rng_a(3), rng_b(3);
  CHECK(generate_aprbs(200, box, params, rng_a).samples() ==
        generate_aprbs(200, box, params, rng_b).samples());

  AprbsParams bad{0, 4};
  Rng r2(1);
  CHECK_THROWS_AS(generate_aprbs(10, box, bad, r2), ConfigError);
}
