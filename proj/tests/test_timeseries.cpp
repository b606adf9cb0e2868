#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "leadlag/timeseries.hpp"

using namespace leadlag;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

SimResult simulate_brownian(int n, std::uint64_t seed, int dim = 1) {
  SimSpec spec;
  spec.kind = SimKind::brownian;
  spec.dim = dim;
  spec.seed = seed;
  spec.fine_grid = uniform_partition(n);
  return simulate(spec);
}

}  // namespace

TEST_CASE("uniform partition basics") {
  CHECK(uniform_partition(1).points == std::vector<double>{0.0, 1.0});
  CHECK(uniform_partition(2).points == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(uniform_partition(4).mesh() == 0.25);
  CHECK_THROWS_AS(uniform_partition(0), invalid_input);
}

TEST_CASE("half-split dyadic partition") {
  const Partition d1 = dyadic_halfsplit_partition(1);
  CHECK(d1.points == std::vector<double>{0.0, 0.25, 0.5, 1.0});

  const Partition d2 = dyadic_halfsplit_partition(2);
  // Left half at spacing 2^-4, right half at spacing 1/4.
  REQUIRE(d2.points.size() == 11);
  for (int k = 0; k <= 8; ++k) CHECK(d2.points[k] == k / 16.0);
  CHECK(d2.points[9] == 0.75);
  CHECK(d2.points[10] == 1.0);

  for (int n = 1; n <= 4; ++n) {
    CHECK(dyadic_halfsplit_partition(n).mesh() == std::pow(2.0, -n));
  }
  CHECK_THROWS_AS(dyadic_halfsplit_partition(0), invalid_input);
  CHECK_THROWS_AS(dyadic_halfsplit_partition(6), invalid_input);
}

TEST_CASE("successive half-split partitions are nested") {
  for (int n = 1; n <= 3; ++n) {
    const Partition a = dyadic_halfsplit_partition(n);
    const Partition b = dyadic_halfsplit_partition(n + 1);
    for (double t : a.points) {
      CHECK(std::find(b.points.begin(), b.points.end(), t) != b.points.end());
    }
  }
}

TEST_CASE("deterministic simulation evaluates the function") {
  SimSpec spec;
  spec.kind = SimKind::deterministic_fn;
  spec.dim = 1;
  spec.fine_grid = uniform_partition(4);
  spec.fn = [](double t) { return std::vector<double>{t}; };
  const SimResult r = simulate(spec);
  CHECK(r.series.values == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK_FALSE(r.unit_bracket);
}

TEST_CASE("brownian simulation is reproducible and starts at zero") {
  const SimResult a = simulate_brownian(256, 42);
  const SimResult b = simulate_brownian(256, 42);
  CHECK(a.series.values == b.series.values);
  CHECK(a.series.values[0] == 0.0);
  CHECK(a.unit_bracket);

  const SimResult c = simulate_brownian(256, 43);
  CHECK(a.series.values != c.series.values);
}

TEST_CASE("brownian increments have the right variance") {
  // Pooled over 16 seeds at n = 2^14; sample variance / gap within 10%.
  const int n = 1 << 14;
  double pooled = 0.0;
  long count = 0;
  for (std::uint64_t seed = 1; seed <= 16; ++seed) {
    const SimResult r = simulate_brownian(n, seed);
    for (int k = 1; k <= n; ++k) {
      const double inc = r.series.values[k] - r.series.values[k - 1];
      pooled += inc * inc;
      ++count;
    }
  }
  const double variance_over_gap = pooled / count * n;
  CHECK(variance_over_gap > 0.9);
  CHECK(variance_over_gap < 1.1);
}

TEST_CASE("realized quadratic variation of brownian paths is near one") {
  const int n = 1 << 14;
  double mean_qv = 0.0;
  for (std::uint64_t seed = 100; seed < 108; ++seed) {
    const SimResult r = simulate_brownian(n, seed);
    double qv = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double inc = r.series.values[k] - r.series.values[k - 1];
      qv += inc * inc;
    }
    mean_qv += qv / 8.0;
  }
  CHECK(mean_qv > 0.9);
  CHECK(mean_qv < 1.1);
}

TEST_CASE("restrict subsamples nested partitions") {
  SimSpec spec;
  spec.kind = SimKind::deterministic_fn;
  spec.dim = 1;
  spec.fine_grid = uniform_partition(4);
  spec.fn = [](double t) { return std::vector<double>{t}; };
  const SampledSeries s = simulate(spec).series;

  const SampledSeries full = restrict(s, uniform_partition(4));
  CHECK(full.values == s.values);

  const SampledSeries half = restrict(s, uniform_partition(2));
  CHECK(half.values == std::vector<double>{0.0, 0.5, 1.0});

  Partition ends;
  ends.points = {0.0, 1.0};
  const SampledSeries e = restrict(s, ends);
  CHECK(e.values == std::vector<double>{0.0, 1.0});

  CHECK_THROWS_AS(restrict(s, uniform_partition(3)), invalid_input);
}

TEST_CASE("restrict composes") {
  const SimResult r = simulate_brownian(64, 5);
  const SampledSeries via16 = restrict(restrict(r.series, uniform_partition(16)),
                                       uniform_partition(4));
  const SampledSeries direct = restrict(r.series, uniform_partition(4));
  CHECK(via16.values == direct.values);
  CHECK(via16.partition.points == direct.partition.points);
}

TEST_CASE("csv round trip is exact") {
  const SimResult r = simulate_brownian(64, 77, 2);
  const std::string path = temp_path("leadlag_ts_roundtrip.csv");
  save_csv(r.series, path);
  const SampledSeries back = load_csv(path);
  CHECK(back.dim == 2);
  CHECK(back.partition.points == r.series.partition.points);
  CHECK(back.values == r.series.values);
  std::remove(path.c_str());
}

TEST_CASE("csv loading rescales and translates") {
  const std::string path = temp_path("leadlag_ts_rescale.csv");
  {
    std::ofstream f(path);
    f << "t,x1\n2,5\n3,6\n4,8\n";
  }
  const SampledSeries s = load_csv(path);
  CHECK(s.partition.points == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(s.values == std::vector<double>{0.0, 1.0, 3.0});
  std::remove(path.c_str());
}

TEST_CASE("csv parse errors carry line numbers") {
  const std::string path = temp_path("leadlag_ts_bad.csv");
  {
    std::ofstream f(path);
    f << "t,x1\n0,0\n0.5,oops\n1,1\n";
  }
  CHECK_THROWS_WITH(load_csv(path), Catch::Matchers::ContainsSubstring("line 3"));
  {
    std::ofstream f(path);
    f << "t,x1\n0,0\n0.5\n1,1\n";
  }
  CHECK_THROWS_WITH(load_csv(path), Catch::Matchers::ContainsSubstring("line 3"));
  {
    std::ofstream f(path);
    f << "t,x1\n0,0\n0.7,1\n0.5,2\n";
  }
  CHECK_THROWS_WITH(load_csv(path), Catch::Matchers::ContainsSubstring("line 4"));
  std::remove(path.c_str());
}
