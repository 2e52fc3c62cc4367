#include <cmath>
#include <stdexcept>

#include "dmolab/metrics.hpp"
#include "dmolab/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dmolab;

TEST_CASE("igd averages nearest distances over the reference set") {
  const std::vector<std::vector<double>> ref = {{0.0, 1.0}, {1.0, 0.0}};
  const std::vector<std::vector<double>> approx = {{0.0, 1.0}};
  CHECK(igd(ref, approx) ==
        doctest::Approx((0.0 + std::sqrt(2.0)) / 2).epsilon(1e-12));
  CHECK(igd(ref, ref) == doctest::Approx(0.0));
  CHECK_THROWS_AS(igd({}, approx), std::invalid_argument);
  CHECK_THROWS_AS(igd(ref, {}), std::invalid_argument);
}

TEST_CASE("hypervolume of the two-point staircase") {
  CHECK(hypervolume({{0.0, 1.0}, {1.0, 0.0}}, {2.0, 2.0}) ==
        doctest::Approx(3.0).epsilon(1e-12));
  // Points outside the bounded box contribute nothing.
  CHECK(hypervolume({{3.0, 3.0}}, {2.0, 2.0}) == 0.0);
  CHECK(hypervolume({{1.0, 2.0}}, {2.0, 2.0}) == 0.0);  // touching: zero box
}

TEST_CASE("hypervolume ignores dominated and duplicate points") {
  const double base = hypervolume({{0.2, 0.8}, {0.6, 0.3}}, {2.0, 2.0});
  CHECK(hypervolume({{0.2, 0.8}, {0.6, 0.3}, {0.7, 0.9}, {0.2, 0.8}},
                    {2.0, 2.0}) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("exact hypervolume matches the cell-decomposition oracle") {
  Rng rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 2 + rng.index(2);  // 2 or 3
    const std::size_t n = 1 + rng.index(20);
    std::vector<std::vector<double>> pts(n, std::vector<double>(m));
    for (auto& p : pts)
      for (double& v : p) v = rng.uniform(0.0, 2.2);
    const std::vector<double> worst(m, 2.0);
    CHECK(hypervolume(pts, worst) ==
          doctest::Approx(oracle::hypervolume_grid(pts, worst)).epsilon(1e-12));
  }
}

TEST_CASE("adding a non-dominated point grows the hypervolume") {
  std::vector<std::vector<double>> pts = {{0.5, 0.5, 0.5}};
  const std::vector<double> worst = {2.0, 2.0, 2.0};
  const double before = hypervolume(pts, worst);
  pts.push_back({0.1, 0.9, 0.6});
  CHECK(hypervolume(pts, worst) > before);
}

TEST_CASE("monte carlo estimate agrees with the exact sweep in 3d") {
  Rng rng(59);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<double>> pts(40, std::vector<double>(3));
    for (auto& p : pts)
      for (double& v : p) v = rng.uniform(0.0, 1.5);
    const std::vector<double> worst = {2.0, 2.0, 2.0};
    const double exact = hypervolume(pts, worst);
    const double mc = hypervolume_monte_carlo(pts, worst, 1234, 1000000);
    CHECK(std::abs(mc - exact) / exact < 0.01);
  }
}

TEST_CASE("monte carlo estimate is reproducible by seed") {
  const std::vector<std::vector<double>> pts = {{0.3, 0.9, 0.4, 0.8},
                                                {0.9, 0.2, 0.7, 0.3}};
  const std::vector<double> worst(4, 2.0);
  CHECK(hypervolume_monte_carlo(pts, worst, 7, 100000) ==
        hypervolume_monte_carlo(pts, worst, 7, 100000));
  CHECK(hypervolume(pts, worst) == hypervolume(pts, worst));
}

TEST_CASE("time-averaged metrics are plain means") {
  const std::vector<MetricRecord> records = {
      {1, 3, 1.0, 0.2}, {2, 4, 2.0, 0.4}, {3, 5, 3.0, 0.6}};
  CHECK(migd(records) == doctest::Approx(2.0));
  CHECK(mhv(records) == doctest::Approx(0.4));
  CHECK_THROWS_AS(migd({}), std::invalid_argument);
}

TEST_CASE("rank averaging shares tied ranks") {
  // Values 1, 2, 2, 4 rank as 1, 2.5, 2.5, 4.
  const std::map<std::string, std::vector<double>> values = {
      {"a", {1.0}}, {"b", {2.0}}, {"c", {2.0}}, {"d", {4.0}}};
  const auto ranks = rank_algorithms(values, true);
  CHECK(ranks.at("a") == doctest::Approx(1.0));
  CHECK(ranks.at("b") == doctest::Approx(2.5));
  CHECK(ranks.at("c") == doctest::Approx(2.5));
  CHECK(ranks.at("d") == doctest::Approx(4.0));
}

TEST_CASE("rank averaging over multiple positions") {
  const std::map<std::string, std::vector<double>> values = {
      {"a", {1.0, 3.0}}, {"b", {2.0, 1.0}}};
  const auto ranks = rank_algorithms(values, true);
  CHECK(ranks.at("a") == doctest::Approx(1.5));
  CHECK(ranks.at("b") == doctest::Approx(1.5));
  // Higher-is-better flips the ordering.
  const auto flipped = rank_algorithms(values, false);
  CHECK(flipped.at("a") == doctest::Approx(1.5));
  CHECK_THROWS_AS(rank_algorithms({{"a", {1.0}}, {"b", {1.0, 2.0}}}, true),
                  std::invalid_argument);
}
