#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dmolab/harness.hpp"
#include "doctest.h"

using namespace dmolab;

namespace {

namespace fs = std::filesystem;

/// Scratch directory wiped on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dmolab_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter = 0;
};

std::vector<int> schedule_ms(const ChangeSchedule& s) {
  std::vector<int> ms;
  for (int t = 1; t <= s.num_steps(); ++t) ms.push_back(s.m_of(t));
  return ms;
}

TraceRow make_row(const std::string& algo, std::uint64_t seed, int step,
                  long gen, double igd_value, double hv_value) {
  TraceRow r;
  r.run_id = "F2-" + algo + "-tau5-s" + std::to_string(seed);
  r.algorithm = algo;
  r.problem = "F2";
  r.tau_t = 5;
  r.seed = seed;
  r.time_step = step;
  r.generation = gen;
  r.m = 3;
  r.igd = igd_value;
  r.hv_norm = hv_value;
  return r;
}

}  // namespace

TEST_CASE("schedule strings cover the presets and explicit lists") {
  CHECK(schedule_ms(schedule_from_string("eq10", 300, 50)) ==
        std::vector<int>{3, 4, 5, 6, 7, 6, 5, 4, 3, 2});
  CHECK(schedule_ms(schedule_from_string("eq13", 300, 50)) ==
        std::vector<int>{3, 5, 7, 5, 3, 2});
  const ChangeSchedule custom = schedule_from_string("4,5,6", 100, 10);
  CHECK(schedule_ms(custom) == std::vector<int>{4, 5, 6});
  CHECK(custom.warmup_gens == 100);
  CHECK(custom.tau_t == 10);
  CHECK(custom.total_generations() == 120);

  CHECK_THROWS_AS(schedule_from_string("", 300, 50), std::invalid_argument);
  CHECK_THROWS_AS(schedule_from_string("nope", 300, 50), std::invalid_argument);
  CHECK_THROWS(schedule_from_string("1,2", 300, 50));  // m below range
}

TEST_CASE("quantiles interpolate linearly between order statistics") {
  CHECK(quantile({1, 2, 3}, 0.5) == doctest::Approx(2.0));
  CHECK(quantile({1, 2, 3}, 0.25) == doctest::Approx(1.5));
  CHECK(quantile({1, 2, 3}, 0.75) == doctest::Approx(2.5));
  CHECK(quantile({3, 1, 2}, 0.25) == doctest::Approx(1.5));  // sorts internally
  CHECK(quantile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
  CHECK(quantile({7}, 0.0) == doctest::Approx(7.0));
  CHECK(quantile({7}, 1.0) == doctest::Approx(7.0));
  CHECK(quantile({1, 2}, 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(quantile({}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(quantile({1.0}, 1.5), std::invalid_argument);
}

TEST_CASE("the reference cache is stable across instances") {
  TempDir tmp;
  const auto problem = DynamicProblem::make(ProblemId::F2);

  PfCache cache(tmp.path);
  const auto& first = cache.get(problem, 3, 7, 50, 9);
  REQUIRE(first.size() == 50);
  for (const auto& row : first) CHECK(row.size() == 3);
  CHECK(fs::exists(tmp.path / "pf_F2_m3_k0_n50_s9.csv"));
  CHECK(&cache.get(problem, 3, 7, 50, 9) == &first);  // memoized

  // A fresh instance reads the file back bit-for-bit.
  PfCache reread(tmp.path);
  const auto& second = reread.get(problem, 3, 7, 50, 9);
  REQUIRE(second.size() == first.size());
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(second[i] == first[i]);

  // Only the drifting problem keys on the drift tick.
  const auto drifting = DynamicProblem::make(ProblemId::F6);
  PfCache f6cache(tmp.path);
  (void)f6cache.get(drifting, 3, 12, 20, 9);
  CHECK(fs::exists(tmp.path / "pf_F6_m3_k2_n20_s9.csv"));

  // Truncated files are rejected, not silently reused.
  {
    std::ofstream bad(tmp.path / "pf_F2_m3_k0_n10_s1.csv");
    bad << "f1,f2,f3\n0.5,0.5,0.5\n";
  }
  PfCache corrupt(tmp.path);
  CHECK_THROWS_AS(corrupt.get(problem, 3, 0, 10, 1), std::runtime_error);
}

TEST_CASE("cache directory resolution prefers config, then environment") {
  const char* saved = std::getenv("DMOLAB_CACHE");
  const std::string saved_value = saved ? saved : "";

  ExperimentConfig config;
  config.out_dir = "somewhere";
  config.cache_dir = "explicit_dir";
  ::setenv("DMOLAB_CACHE", "env_dir", 1);
  CHECK(resolve_cache_dir(config) == fs::path("explicit_dir"));
  config.cache_dir.clear();
  CHECK(resolve_cache_dir(config) == fs::path("env_dir"));
  ::unsetenv("DMOLAB_CACHE");
  CHECK(resolve_cache_dir(config) == fs::path("somewhere") / "pf_cache");

  if (saved) ::setenv("DMOLAB_CACHE", saved_value.c_str(), 1);
}

TEST_CASE("an experiment produces one row per time step per seed") {
  TempDir tmp;
  ExperimentConfig config;
  config.problem = ProblemId::F2;
  config.algorithm = "dtaea";
  config.n_pop = 10;
  config.tau_t = 3;
  config.warmup_gens = 4;
  config.schedule = "3,4,3";
  config.seeds = {1, 2};
  config.ref_size = 40;
  config.out_dir = (tmp.path / "out").string();
  config.cache_dir = (tmp.path / "cache").string();

  const RunTrace trace = run_experiment(config);
  REQUIRE(trace.rows.size() == 6);  // 3 steps x 2 seeds
  const std::vector<int> expect_step = {1, 2, 3};
  const std::vector<long> expect_gen = {3, 6, 9};  // last generation per step
  const std::vector<int> expect_m = {3, 4, 3};
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const TraceRow& r = trace.rows[i];
    const std::size_t k = i % 3;
    CHECK(r.time_step == expect_step[k]);
    CHECK(r.generation == expect_gen[k]);
    CHECK(r.m == expect_m[k]);
    CHECK(r.seed == config.seeds[i / 3]);
    CHECK(r.algorithm == "dtaea");
    CHECK(r.problem == "F2");
    CHECK(r.igd > 0.0);
    CHECK(std::isfinite(r.hv_norm));
    CHECK(r.hv_norm >= 0.0);
    CHECK(r.hv_norm <= 1.0);
    CHECK(r.wall_ms == 0.0);  // timing disabled keeps output reproducible
  }
  CHECK(trace.rows[0].run_id == "F2-dtaea-tau3-s1");
  CHECK(trace.rows[3].run_id == "F2-dtaea-tau3-s2");

  SUBCASE("per-generation logging adds NaN-hypervolume rows") {
    config.per_generation_log = true;
    config.seeds = {1};
    const RunTrace full = run_experiment(config);
    REQUIRE(full.rows.size() == 10);  // 4 warmup + 3 + 3 generations
    for (const TraceRow& r : full.rows) {
      const bool final_gen =
          r.generation == 3 || r.generation == 6 || r.generation == 9;
      CHECK(std::isnan(r.hv_norm) == !final_gen);
      CHECK(r.igd > 0.0);
    }
  }
}

TEST_CASE("identical configurations give byte-identical traces") {
  TempDir tmp;
  ExperimentConfig config;
  config.problem = ProblemId::F5;
  config.algorithm = "moead";
  config.n_pop = 10;
  config.tau_t = 2;
  config.warmup_gens = 3;
  config.schedule = "3,2";
  config.seeds = {7};
  config.ref_size = 30;
  config.out_dir = (tmp.path / "out").string();
  config.cache_dir = (tmp.path / "cache").string();

  std::ostringstream first, second;
  write_trace_csv(run_experiment(config), first);
  write_trace_csv(run_experiment(config), second);
  CHECK(first.str() == second.str());
  CHECK(first.str().find("nan") == std::string::npos);
}

TEST_CASE("trace CSV round-trips every field") {
  RunTrace trace;
  trace.rows.push_back(make_row("algA", 3, 1, 9, 0.125, 0.75));
  trace.rows.push_back(
      make_row("algA", 3, 2, 14, 1e-9,
               std::numeric_limits<double>::quiet_NaN()));
  trace.rows[1].wall_ms = 12.5;

  std::ostringstream out;
  write_trace_csv(trace, out);
  std::istringstream in(out.str());
  const RunTrace back = read_trace_csv(in);
  REQUIRE(back.rows.size() == trace.rows.size());
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const TraceRow& a = trace.rows[i];
    const TraceRow& b = back.rows[i];
    CHECK(a.run_id == b.run_id);
    CHECK(a.algorithm == b.algorithm);
    CHECK(a.problem == b.problem);
    CHECK(a.tau_t == b.tau_t);
    CHECK(a.seed == b.seed);
    CHECK(a.time_step == b.time_step);
    CHECK(a.generation == b.generation);
    CHECK(a.m == b.m);
    CHECK(a.igd == b.igd);  // %.17g round-trips doubles exactly
    CHECK((std::isnan(a.hv_norm) ? std::isnan(b.hv_norm)
                                 : a.hv_norm == b.hv_norm));
    CHECK(a.wall_ms == b.wall_ms);
  }

  std::istringstream empty("");
  CHECK_THROWS_AS(read_trace_csv(empty), std::runtime_error);
  std::istringstream malformed("header\n1,2,3\n");
  CHECK_THROWS_AS(read_trace_csv(malformed), std::runtime_error);
}

TEST_CASE("trace files land in the per-config canonical path") {
  ExperimentConfig config;
  config.problem = ProblemId::F3;
  config.algorithm = "dnsga2";
  config.tau_t = 25;
  config.out_dir = "results";
  CHECK(trace_path(config) ==
        fs::path("results") / "trace_F3_dnsga2_tau25.csv");
}

TEST_CASE("optimizer factory knows exactly the published names") {
  CHECK(optimizer_names().size() == 7);
  for (const std::string& name : optimizer_names())
    CHECK(make_optimizer(name, 10) != nullptr);
  CHECK_THROWS_AS(make_optimizer("spea2", 10), std::invalid_argument);
}

TEST_CASE("summaries aggregate per-seed time averages and ranks") {
  RunTrace trace;
  // algA beats algB on every step. A stale early-generation row for algA
  // must be ignored in favor of the final row of the same step.
  trace.rows.push_back(make_row("algA", 1, 1, 5, 0.9, 0.0));  // stale
  trace.rows.push_back(make_row("algA", 1, 1, 9, 0.10, 0.5));
  trace.rows.push_back(make_row("algA", 1, 2, 14, 0.20, 0.6));
  trace.rows.push_back(make_row("algA", 2, 1, 9, 0.30, 0.7));
  trace.rows.push_back(make_row("algA", 2, 2, 14, 0.40, 0.8));
  trace.rows.push_back(make_row("algB", 1, 1, 9, 0.50, 0.1));
  trace.rows.push_back(make_row("algB", 1, 2, 14, 0.60, 0.2));
  trace.rows.push_back(make_row("algB", 2, 1, 9, 0.70, 0.3));
  trace.rows.push_back(make_row("algB", 2, 2, 14, 0.80, 0.4));

  const auto rows = summarize({trace});
  REQUIRE(rows.size() == 2);
  const SummaryRow& a = rows[0].algorithm == "algA" ? rows[0] : rows[1];
  const SummaryRow& b = rows[0].algorithm == "algA" ? rows[1] : rows[0];
  // Per-seed MIGD of algA: 0.15 and 0.35.
  CHECK(a.migd_median == doctest::Approx(0.25));
  CHECK(a.migd_iqr == doctest::Approx(0.10));
  CHECK(a.mhv_median == doctest::Approx(0.65));
  CHECK(a.mhv_iqr == doctest::Approx(0.10));
  CHECK(a.mean_rank == doctest::Approx(1.0));
  CHECK(b.migd_median == doctest::Approx(0.65));
  CHECK(b.mhv_median == doctest::Approx(0.25));
  CHECK(b.mean_rank == doctest::Approx(2.0));

  // An algorithm missing a whole step is a hard error, not a silent skew.
  RunTrace partial;
  for (const TraceRow& r : trace.rows)
    if (!(r.algorithm == "algB" && r.time_step == 2))
      partial.rows.push_back(r);
  CHECK_THROWS_AS(summarize({partial}), std::runtime_error);
}

TEST_CASE("plot data holds across-seed median trajectories") {
  TempDir tmp;
  RunTrace trace;
  trace.rows.push_back(make_row("algA", 1, 1, 9, 0.10, 0.5));
  trace.rows.push_back(make_row("algA", 2, 1, 9, 0.30, 0.5));
  trace.rows.push_back(make_row("algB", 1, 1, 9, 0.50, 0.5));
  trace.rows.push_back(make_row("algB", 2, 1, 9, 0.90, 0.5));
  emit_plot_data({trace}, tmp.path);

  std::ifstream in(tmp.path / "igd_F2_tau5.csv");
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "generation,algorithm,median_igd");
  std::map<std::string, double> medians;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string gen, algo, value;
    std::getline(ss, gen, ',');
    std::getline(ss, algo, ',');
    std::getline(ss, value, ',');
    CHECK(gen == "9");
    medians[algo] = std::stod(value);
  }
  REQUIRE(medians.size() == 2);
  CHECK(medians["algA"] == doctest::Approx(0.20));
  CHECK(medians["algB"] == doctest::Approx(0.70));
}
