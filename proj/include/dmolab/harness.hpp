#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dmolab/core.hpp"
#include "dmolab/problems.hpp"
#include "dmolab/rng.hpp"

namespace dmolab {

/// Uniform driver over every algorithm the harness can run. `output()` is
/// the population the metrics are computed on: the convergence archive for
/// the two-archive optimizer, the whole population for the baselines.
class Optimizer {
 public:
  virtual ~Optimizer() = default;
  virtual void init(const DynamicProblem& problem, int m, int env_id, long tau,
                    Rng& rng) = 0;
  virtual void on_change(const DynamicProblem& problem, int new_m, int env_id,
                         long tau, Rng& rng) = 0;
  virtual void step(const DynamicProblem& problem, int env_id, long tau,
                    Rng& rng) = 0;
  virtual const std::vector<Solution>& output() const = 0;
};

/// Known names: dtaea, dtaea-v1 (no restricted mating), dtaea-v2 (no
/// reconstruction), dtaea-v3 (neither), nsga2, dnsga2, moead. Throws on
/// anything else.
std::unique_ptr<Optimizer> make_optimizer(const std::string& name,
                                          std::size_t n_pop);
const std::vector<std::string>& optimizer_names();

/// Parses "eq10", "eq13", or an explicit comma-separated m sequence such
/// as "3,4,5".
ChangeSchedule schedule_from_string(const std::string& text, int warmup_gens,
                                    int tau_t);

struct ExperimentConfig {
  ProblemId problem = ProblemId::F2;
  std::string algorithm = "dtaea";
  int tau_t = 50;             ///< generations per time step after warmup
  std::size_t n_pop = 300;
  std::string schedule = "eq10";
  std::vector<std::uint64_t> seeds = {1};
  int warmup_gens = 300;
  std::size_t ref_size = 1000;     ///< reference front sample count
  std::uint64_t ref_seed = 12345;  ///< seed of the reference front sampler
  std::string out_dir = "results";
  std::string cache_dir;  ///< empty: $DMOLAB_CACHE, else out_dir/pf_cache
  bool per_generation_log = false;  ///< log every generation, not just step ends
  bool timing = false;  ///< fill wall_ms (makes output timing-dependent)
  bool table1_verbatim = false;
};

/// One metrics row. Every run contributes one row at the final generation
/// of each time step; with per-generation logging, intermediate rows carry
/// the igd trajectory and NaN hypervolume.
struct TraceRow {
  std::string run_id;
  std::string algorithm;
  std::string problem;
  int tau_t = 0;
  std::uint64_t seed = 0;
  int time_step = 0;
  long generation = 0;
  int m = 0;
  double igd = 0.0;
  double hv_norm = 0.0;
  double wall_ms = 0.0;
};

struct RunTrace {
  std::vector<TraceRow> rows;
};

/// Disk-backed cache of reference front samples, keyed by problem,
/// objective count, drift tick, sample count and sampler seed. Files are
/// CSVs with header f1..fm. The same key always returns the same points.
class PfCache {
 public:
  explicit PfCache(std::filesystem::path dir);
  const std::vector<std::vector<double>>& get(const DynamicProblem& problem,
                                              int m, long tau,
                                              std::size_t count,
                                              std::uint64_t seed);
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::vector<std::vector<double>>> memory_;
};

/// Cache directory precedence: explicit config value, then the
/// DMOLAB_CACHE environment variable, then out_dir/pf_cache.
std::filesystem::path resolve_cache_dir(const ExperimentConfig& config);

/// Runs every seed of the configured experiment and returns the combined
/// trace. Identical configs and seeds produce identical traces; wall_ms
/// stays 0 unless timing is enabled.
RunTrace run_experiment(const ExperimentConfig& config);

/// Canonical trace location for a config: out_dir/trace_<problem>_<algo>_
/// tau<tau_t>.csv.
std::filesystem::path trace_path(const ExperimentConfig& config);

void write_trace_csv(const RunTrace& trace, std::ostream& out);
RunTrace read_trace_csv(std::istream& in);

/// Linear-interpolation quantile of the order statistics, p in [0, 1]
/// (the {1,2,3} set has median 2 and quartiles 1.5 and 2.5).
double quantile(std::vector<double> values, double p);

/// Per (algorithm, problem, tau_t): medians and interquartile ranges of
/// the per-seed time-averaged metrics, plus the algorithm's mean rank by
/// per-step median igd against the other algorithms run on the same
/// problem and tau_t.
struct SummaryRow {
  std::string algorithm;
  std::string problem;
  int tau_t = 0;
  double migd_median = 0.0;
  double migd_iqr = 0.0;
  double mhv_median = 0.0;
  double mhv_iqr = 0.0;
  double mean_rank = 0.0;
};

std::vector<SummaryRow> summarize(const std::vector<RunTrace>& traces);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

/// One CSV per (problem, tau_t) with columns generation, algorithm,
/// median_igd: the across-seed median igd trajectory of every algorithm.
void emit_plot_data(const std::vector<RunTrace>& traces,
                    const std::filesystem::path& out_dir);

}  // namespace dmolab
