#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "tgraph/dataset.hpp"

using namespace tgraph;

TEST_CASE("edge csv with header and labels") {
  std::stringstream in("src,dst,ts,label\n0,1,5,1\n2, 3 ,5,0\r\n\n4,0,9,-2\n");
  const EdgeStream s = read_edge_csv(in);
  CHECK(s.edges == std::vector<TemporalEdge>{{0, 1, 5}, {2, 3, 5}, {4, 0, 9}});
  CHECK(s.labels == std::vector<std::int64_t>{1, 0, -2});
  CHECK(s.max_node() == 4);

  std::stringstream plain("7,8,1\n");
  const EdgeStream p = read_edge_csv(plain);
  CHECK(p.edges.size() == 1);
  CHECK(p.labels.empty());

  std::stringstream out;
  write_edge_csv(out, s.edges);
  const EdgeStream back = read_edge_csv(out);
  CHECK(back.edges == s.edges);
}

TEST_CASE("edge csv errors name the row") {
  std::stringstream two("0,1,5\n1,2\n");
  CHECK_THROWS_WITH_AS(read_edge_csv(two), "row 2: expected 3 or 4 fields, got 2", FormatError);
  std::stringstream mixed("0,1,5\n1,2,6,1\n");
  CHECK_THROWS_WITH_AS(read_edge_csv(mixed), "row 2: inconsistent column count", FormatError);
  std::stringstream bad("0,1,5\n1,x,6\n");
  CHECK_THROWS_WITH_AS(read_edge_csv(bad), "row 2: bad dst 'x'", FormatError);
  std::stringstream unsorted("h\n0,1,5\n1,2,4\n");
  CHECK_THROWS_WITH_AS(read_edge_csv(unsorted), "row 3: timestamp 4 is earlier than the previous row",
                       FormatError);
  std::stringstream negative_id("0,-1,5\n");
  CHECK_THROWS_AS(read_edge_csv(negative_id), FormatError);
}

TEST_CASE("synthetic streams") {
  const SyntheticSpec spec{300, 4000, 2.2, 5000, 9};
  const auto a = generate_synthetic(spec);
  CHECK(a == generate_synthetic(spec));
  SyntheticSpec other = spec;
  other.seed = 10;
  CHECK(a != generate_synthetic(other));
  REQUIRE(a.size() == 4000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].src != a[i].dst);
    CHECK(a[i].src < 300);
    CHECK(a[i].dst < 300);
    CHECK(a[i].timestamp >= 0);
    CHECK(a[i].timestamp < 5000);
    if (i > 0) CHECK(a[i - 1].timestamp <= a[i].timestamp);
  }
  CHECK(generate_synthetic(SyntheticSpec{1, 100, 2.5, 10, 1}).empty());

  SyntheticSpec local = spec;
  local.locality = 0.8;
  local.locality_window = 16;
  CHECK(generate_synthetic(local).size() == 4000);

  CHECK_THROWS_AS(SyntheticSpec({0, 1, 2.5, 10, 1}).validate(), ConfigError);
  CHECK_THROWS_AS(SyntheticSpec({5, 0, 2.5, 10, 1}).validate(), ConfigError);
  CHECK_THROWS_AS(SyntheticSpec({5, 5, 1.0, 10, 1}).validate(), ConfigError);
  CHECK_THROWS_AS(SyntheticSpec({5, 5, 2.5, 0, 1}).validate(), ConfigError);
  SyntheticSpec bad_loc = spec;
  bad_loc.locality = 1.5;
  CHECK_THROWS_AS(bad_loc.validate(), ConfigError);
}

TEST_CASE("tail estimator recovers a planted exponent") {
  // continuous Pareto draws rounded down: P(k) ~ k^-alpha for large k
  for (double alpha : {2.1, 2.5, 3.0}) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(alpha * 100));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::uint64_t> deg;
    for (int i = 0; i < 50000; ++i) {
      const double x = 0.5 * std::pow(1.0 - u(rng), -1.0 / (alpha - 1.0));
      deg.push_back(static_cast<std::uint64_t>(std::floor(x + 0.5)));
    }
    CHECK(fit_tail_exponent(deg, 10) == doctest::Approx(alpha).epsilon(0.05));
  }
  CHECK_THROWS_AS(fit_tail_exponent(std::vector<std::uint64_t>{1, 2}, 0), ArgumentError);
}

TEST_CASE("generated degrees follow the requested skew") {
  for (double skew : {2.1, 2.5}) {
    const auto s = generate_synthetic(SyntheticSpec{20000, 100000, skew, 1000000, 3});
    std::vector<std::uint64_t> deg(20000);
    for (const auto& e : s) {
      ++deg[e.src];
      ++deg[e.dst];
    }
    const double est = fit_tail_exponent(deg, 20);
    MESSAGE("skew " << skew << " estimated " << est);
    CHECK(std::abs(est - skew) <= 0.3);
  }
}
