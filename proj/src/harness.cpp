#include "dmolab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dmolab/baselines.hpp"
#include "dmolab/dtaea.hpp"
#include "dmolab/metrics.hpp"

namespace dmolab {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class DtaeaOptimizer : public Optimizer {
 public:
  explicit DtaeaOptimizer(DtaeaConfig config) : config_(config) {}

  void init(const DynamicProblem& problem, int m, int env_id, long tau,
            Rng& rng) override {
    config_.variation =
        VariationParams::for_dimension(static_cast<std::size_t>(problem.n));
    impl_.emplace(config_);
    impl_->init(problem, m, env_id, tau, rng);
  }
  void on_change(const DynamicProblem& problem, int new_m, int env_id, long tau,
                 Rng& rng) override {
    impl_->on_change(problem, new_m, env_id, tau, rng);
  }
  void step(const DynamicProblem& problem, int env_id, long tau,
            Rng& rng) override {
    impl_->step(problem, env_id, tau, rng);
  }
  const std::vector<Solution>& output() const override {
    return impl_->convergence_archive();
  }

 private:
  DtaeaConfig config_;
  std::optional<Dtaea> impl_;
};

class Nsga2Optimizer : public Optimizer {
 public:
  Nsga2Optimizer(std::size_t n_pop, bool injection)
      : n_pop_(n_pop), injection_(injection) {}

  void init(const DynamicProblem& problem, int m, int env_id, long tau,
            Rng& rng) override {
    params_ = VariationParams::for_dimension(static_cast<std::size_t>(problem.n));
    pop_.clear();
    pop_.reserve(n_pop_);
    for (std::size_t i = 0; i < n_pop_; ++i) {
      Solution s;
      s.x.resize(static_cast<std::size_t>(problem.n));
      for (double& v : s.x) v = rng.uniform();
      s.f = problem.evaluate(s.x, m, tau);
      s.env_id = env_id;
      pop_.push_back(std::move(s));
    }
  }
  void on_change(const DynamicProblem& problem, int new_m, int env_id, long tau,
                 Rng& rng) override {
    if (injection_) {
      pop_ = injection_on_change(pop_, problem, new_m, env_id, tau,
                                 kInjectionFraction, rng);
    } else {
      for (Solution& s : pop_) {
        s.f = problem.evaluate(s.x, new_m, tau);
        s.env_id = env_id;
      }
    }
  }
  void step(const DynamicProblem& problem, int env_id, long tau,
            Rng& rng) override {
    const int m = static_cast<int>(pop_.front().f.size());
    pop_ = nsga2_generation(pop_, problem, m, env_id, tau, params_, rng);
  }
  const std::vector<Solution>& output() const override { return pop_; }

 private:
  static constexpr double kInjectionFraction = 0.2;
  std::size_t n_pop_;
  bool injection_;
  VariationParams params_;
  std::vector<Solution> pop_;
};

class MoeadOptimizer : public Optimizer {
 public:
  void init(const DynamicProblem& problem, int m, int env_id, long tau,
            Rng& rng) override {
    params_ = VariationParams::for_dimension(static_cast<std::size_t>(problem.n));
    state_ = moead_init(problem, m, env_id, tau, kNeighborhood, rng);
  }
  void on_change(const DynamicProblem& problem, int new_m, int env_id, long tau,
                 Rng& rng) override {
    moead_on_change(state_, problem, new_m, env_id, tau, kNeighborhood, rng);
  }
  void step(const DynamicProblem& problem, int env_id, long tau,
            Rng& rng) override {
    moead_generation(state_, problem, env_id, tau, params_, rng);
  }
  const std::vector<Solution>& output() const override { return state_.pop; }

 private:
  static constexpr std::size_t kNeighborhood = 20;
  VariationParams params_;
  MoeadState state_;
};

}  // namespace

std::unique_ptr<Optimizer> make_optimizer(const std::string& name,
                                          std::size_t n_pop) {
  DtaeaConfig config;
  config.n_pop = n_pop;
  if (name == "dtaea" || name == "dtaea-v1" || name == "dtaea-v2" ||
      name == "dtaea-v3") {
    config.restricted_mating = (name != "dtaea-v1" && name != "dtaea-v3");
    config.reconstruction = (name != "dtaea-v2" && name != "dtaea-v3");
    return std::make_unique<DtaeaOptimizer>(config);
  }
  if (name == "nsga2") return std::make_unique<Nsga2Optimizer>(n_pop, false);
  if (name == "dnsga2") return std::make_unique<Nsga2Optimizer>(n_pop, true);
  if (name == "moead") return std::make_unique<MoeadOptimizer>();
  throw std::invalid_argument("unknown algorithm: " + name);
}

const std::vector<std::string>& optimizer_names() {
  static const std::vector<std::string> names = {
      "dtaea", "dtaea-v1", "dtaea-v2", "dtaea-v3", "nsga2", "dnsga2", "moead"};
  return names;
}

ChangeSchedule schedule_from_string(const std::string& text, int warmup_gens,
                                    int tau_t) {
  if (text == "eq10") return ChangeSchedule::ramp(warmup_gens, tau_t);
  if (text == "eq13") return ChangeSchedule::leap(warmup_gens, tau_t);
  std::vector<int> ms;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) ms.push_back(std::stoi(token));
  if (ms.empty())
    throw std::invalid_argument("schedule_from_string: cannot parse '" + text +
                                "'");
  return ChangeSchedule::custom(ms, warmup_gens, tau_t);
}

PfCache::PfCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

const std::vector<std::vector<double>>& PfCache::get(
    const DynamicProblem& problem, int m, long tau, std::size_t count,
    std::uint64_t seed) {
  const long tick = problem.front_drifts() ? tau / problem.tau_bar : 0;
  char key[128];
  std::snprintf(key, sizeof(key), "pf_%s_m%d_k%ld_n%zu_s%llu",
                to_string(problem.id), m, tick, count,
                static_cast<unsigned long long>(seed));
  auto it = memory_.find(key);
  if (it != memory_.end()) return it->second;

  const std::filesystem::path file = dir_ / (std::string(key) + ".csv");
  std::vector<std::vector<double>> pf;
  if (std::filesystem::exists(file)) {
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<double> row;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
      if (static_cast<int>(row.size()) != m)
        throw std::runtime_error("corrupt reference cache file: " +
                                 file.string());
      pf.push_back(std::move(row));
    }
    if (pf.size() != count)
      throw std::runtime_error("corrupt reference cache file: " + file.string());
  } else {
    pf = problem.sample_pf(m, tau, count, seed);
    std::ofstream out(file);
    for (int j = 1; j <= m; ++j) out << (j > 1 ? "," : "") << "f" << j;
    out << "\n";
    for (const auto& row : pf) {
      for (std::size_t j = 0; j < row.size(); ++j)
        out << (j > 0 ? "," : "") << fmt_double(row[j]);
      out << "\n";
    }
  }
  return memory_.emplace(key, std::move(pf)).first->second;
}

std::filesystem::path resolve_cache_dir(const ExperimentConfig& config) {
  if (!config.cache_dir.empty()) return config.cache_dir;
  if (const char* env = std::getenv("DMOLAB_CACHE"); env && *env) return env;
  return std::filesystem::path(config.out_dir) / "pf_cache";
}

RunTrace run_experiment(const ExperimentConfig& config) {
  DynamicProblem problem = DynamicProblem::make(config.problem);
  problem.table1_verbatim = config.table1_verbatim;
  const ChangeSchedule sched =
      schedule_from_string(config.schedule, config.warmup_gens, config.tau_t);
  PfCache cache(resolve_cache_dir(config));

  RunTrace trace;
  for (const std::uint64_t seed : config.seeds) {
    Rng rng(seed);
    auto optimizer = make_optimizer(config.algorithm, config.n_pop);
    char run_id[96];
    std::snprintf(run_id, sizeof(run_id), "%s-%s-tau%d-s%llu",
                  to_string(config.problem), config.algorithm.c_str(),
                  config.tau_t, static_cast<unsigned long long>(seed));

    long tau = 0;
    optimizer->init(problem, sched.m_of(1), 1, tau, rng);
    double pending_ms = 0.0;

    for (int t = 1; t <= sched.num_steps(); ++t) {
      const int m = sched.m_of(t);
      if (t > 1) optimizer->on_change(problem, m, t, tau, rng);
      const int gens = (t == 1) ? sched.warmup_gens : sched.tau_t;
      for (int g = 0; g < gens; ++g) {
        const auto t0 = std::chrono::steady_clock::now();
        optimizer->step(problem, t, tau, rng);
        if (config.timing)
          pending_ms += std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        const bool step_end = (g == gens - 1);
        if (step_end || config.per_generation_log) {
          std::vector<std::vector<double>> approx;
          approx.reserve(optimizer->output().size());
          for (const Solution& s : optimizer->output()) approx.push_back(s.f);
          const auto& ref =
              cache.get(problem, m, tau, config.ref_size, config.ref_seed);
          TraceRow row;
          row.run_id = run_id;
          row.algorithm = config.algorithm;
          row.problem = to_string(config.problem);
          row.tau_t = config.tau_t;
          row.seed = seed;
          row.time_step = t;
          row.generation = tau;
          row.m = m;
          row.igd = igd(ref, approx);
          if (step_end) {
            const std::vector<double> worst(static_cast<std::size_t>(m), 2.0);
            row.hv_norm = hypervolume(approx, worst) /
                          std::pow(2.0, static_cast<double>(m));
          } else {
            row.hv_norm = std::numeric_limits<double>::quiet_NaN();
          }
          row.wall_ms = pending_ms;
          pending_ms = 0.0;
          trace.rows.push_back(std::move(row));
        }
        ++tau;
      }
    }
  }
  return trace;
}

std::filesystem::path trace_path(const ExperimentConfig& config) {
  char name[96];
  std::snprintf(name, sizeof(name), "trace_%s_%s_tau%d.csv",
                to_string(config.problem), config.algorithm.c_str(),
                config.tau_t);
  return std::filesystem::path(config.out_dir) / name;
}

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  out << "run_id,algorithm,problem,tau_t,seed,time_step,generation,m,igd,"
         "hv_norm,wall_ms\n";
  for (const TraceRow& r : trace.rows) {
    out << r.run_id << ',' << r.algorithm << ',' << r.problem << ','
        << r.tau_t << ',' << r.seed << ',' << r.time_step << ','
        << r.generation << ',' << r.m << ',' << fmt_double(r.igd) << ','
        << fmt_double(r.hv_norm) << ',' << fmt_double(r.wall_ms) << '\n';
  }
}

RunTrace read_trace_csv(std::istream& in) {
  RunTrace trace;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_trace_csv: empty input");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 11)
      throw std::runtime_error("read_trace_csv: malformed row: " + line);
    TraceRow r;
    r.run_id = cells[0];
    r.algorithm = cells[1];
    r.problem = cells[2];
    r.tau_t = std::stoi(cells[3]);
    r.seed = std::stoull(cells[4]);
    r.time_step = std::stoi(cells[5]);
    r.generation = std::stol(cells[6]);
    r.m = std::stoi(cells[7]);
    r.igd = std::stod(cells[8]);
    r.hv_norm = std::stod(cells[9]);
    r.wall_ms = std::stod(cells[10]);
    trace.rows.push_back(std::move(r));
  }
  return trace;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile: p out of range");
  std::sort(values.begin(), values.end());
  const double h = p * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

namespace {

struct CellKey {
  std::string problem;
  int tau_t;
  std::string algorithm;
  bool operator<(const CellKey& o) const {
    if (problem != o.problem) return problem < o.problem;
    if (tau_t != o.tau_t) return tau_t < o.tau_t;
    return algorithm < o.algorithm;
  }
};

/// Final-generation rows per (cell, seed, time_step); these carry the
/// per-step metric values the summaries are built from.
std::map<CellKey, std::map<std::uint64_t, std::map<int, TraceRow>>>
collect_final_rows(const std::vector<RunTrace>& traces) {
  std::map<CellKey, std::map<std::uint64_t, std::map<int, TraceRow>>> cells;
  for (const RunTrace& trace : traces) {
    for (const TraceRow& row : trace.rows) {
      const CellKey key{row.problem, row.tau_t, row.algorithm};
      auto& slot = cells[key][row.seed];
      auto it = slot.find(row.time_step);
      if (it == slot.end() || row.generation > it->second.generation)
        slot[row.time_step] = row;
    }
  }
  return cells;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<RunTrace>& traces) {
  const auto cells = collect_final_rows(traces);

  // Mean ranks are computed within every (problem, tau_t) group from the
  // per-time-step across-seed median igd of each algorithm.
  std::map<std::pair<std::string, int>, std::map<std::string, double>> ranks;
  {
    std::map<std::pair<std::string, int>,
             std::map<std::string, std::map<int, std::vector<double>>>>
        group_igds;
    for (const auto& [key, by_seed] : cells)
      for (const auto& [seed, by_step] : by_seed)
        for (const auto& [step, row] : by_step)
          group_igds[{key.problem, key.tau_t}][key.algorithm][step].push_back(
              row.igd);
    for (const auto& [group, by_algo] : group_igds) {
      std::set<int> steps;
      for (const auto& [algo, by_step] : by_algo)
        for (const auto& [step, igds] : by_step) steps.insert(step);
      std::map<std::string, std::vector<double>> medians;
      for (const auto& [algo, by_step] : by_algo) {
        for (int step : steps) {
          auto it = by_step.find(step);
          if (it == by_step.end())
            throw std::runtime_error(
                "summarize: algorithms cover different time steps");
          medians[algo].push_back(quantile(it->second, 0.5));
        }
      }
      ranks[group] = rank_algorithms(medians, /*lower_is_better=*/true);
    }
  }

  std::vector<SummaryRow> out;
  for (const auto& [key, by_seed] : cells) {
    std::vector<double> migds, mhvs;
    for (const auto& [seed, by_step] : by_seed) {
      std::vector<MetricRecord> records;
      for (const auto& [step, row] : by_step)
        records.push_back({row.time_step, row.m, row.igd, row.hv_norm});
      migds.push_back(migd(records));
      mhvs.push_back(mhv(records));
    }
    SummaryRow row;
    row.algorithm = key.algorithm;
    row.problem = key.problem;
    row.tau_t = key.tau_t;
    row.migd_median = quantile(migds, 0.5);
    row.migd_iqr = quantile(migds, 0.75) - quantile(migds, 0.25);
    row.mhv_median = quantile(mhvs, 0.5);
    row.mhv_iqr = quantile(mhvs, 0.75) - quantile(mhvs, 0.25);
    row.mean_rank = ranks.at({key.problem, key.tau_t}).at(key.algorithm);
    out.push_back(std::move(row));
  }
  return out;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "# quantiles: linear interpolation between order statistics\n";
  out << "algorithm,problem,tau_t,migd_median,migd_iqr,mhv_median,mhv_iqr,"
         "mean_rank\n";
  for (const SummaryRow& r : rows) {
    out << r.algorithm << ',' << r.problem << ',' << r.tau_t << ','
        << fmt_double(r.migd_median) << ',' << fmt_double(r.migd_iqr) << ','
        << fmt_double(r.mhv_median) << ',' << fmt_double(r.mhv_iqr) << ','
        << fmt_double(r.mean_rank) << '\n';
  }
}

void emit_plot_data(const std::vector<RunTrace>& traces,
                    const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  // (problem, tau_t) -> generation -> algorithm -> igd values across seeds
  std::map<std::pair<std::string, int>,
           std::map<long, std::map<std::string, std::vector<double>>>>
      groups;
  for (const RunTrace& trace : traces)
    for (const TraceRow& row : trace.rows)
      groups[{row.problem, row.tau_t}][row.generation][row.algorithm]
          .push_back(row.igd);
  for (const auto& [group, by_gen] : groups) {
    char name[96];
    std::snprintf(name, sizeof(name), "igd_%s_tau%d.csv", group.first.c_str(),
                  group.second);
    std::ofstream out(out_dir / name);
    out << "generation,algorithm,median_igd\n";
    for (const auto& [gen, by_algo] : by_gen)
      for (const auto& [algo, igds] : by_algo)
        out << gen << ',' << algo << ',' << fmt_double(quantile(igds, 0.5))
            << '\n';
  }
}

}  // namespace dmolab
