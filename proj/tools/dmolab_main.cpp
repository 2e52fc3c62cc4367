// Command-line front end: run experiments, summarize traces, emit plot
// data, and dump weight sets. Options can also be given through a
// key=value config file (--config); explicit flags win over file values.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dmolab/decomposition.hpp"
#include "dmolab/harness.hpp"

namespace {

/// Seed list syntax: "1..10" (inclusive range) or "1,2,5".
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, range));
    const std::uint64_t hi = std::stoull(text.substr(range + 2));
    if (hi < lo) throw CLI::ValidationError("--seeds", "range is reversed");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ','))
    if (!token.empty()) seeds.push_back(std::stoull(token));
  if (seeds.empty()) throw CLI::ValidationError("--seeds", "no seeds given");
  return seeds;
}

/// Applies `key=value` lines from a config file to the options of `cmd`.
/// Keys are long option names without the leading dashes. A value is used
/// only when the option was not given on the command line, so explicit
/// flags win. Blank lines and lines starting with '#' or ';' are skipped;
/// malformed lines and unknown keys are errors.
void apply_config_file(const std::string& path, CLI::App& cmd) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  const auto strip = [](const std::string& s) {
    const char* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
  };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = strip(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    const std::string at = path + ":" + std::to_string(line_no);
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(at + ": expected key=value, got '" + text + "'");
    const std::string key = strip(text.substr(0, eq));
    std::string value = strip(text.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    CLI::Option* opt = cmd.get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw std::runtime_error(at + ": unknown option: " + key);
    if (opt->count() > 0) continue;
    if (opt->get_expected_min() == 0)  // flag: accept true/false-style values
      opt->add_result(opt->get_flag_value(key, value));
    else
      opt->add_result(value);
    opt->run_callback();
  }
}

std::vector<dmolab::RunTrace> load_traces(const std::string& in_dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(in_dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("trace_", 0) == 0 &&
        entry.path().extension() == ".csv")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error("no trace_*.csv files in " + in_dir);
  std::vector<dmolab::RunTrace> traces;
  for (const auto& file : files) {
    std::ifstream in(file);
    traces.push_back(dmolab::read_trace_csv(in));
  }
  return traces;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic multi-objective optimization lab"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  dmolab::ExperimentConfig config;
  std::string problem_name = "F2";
  std::string seeds_text = "1";
  std::string config_path;
  auto* run = app.add_subcommand("run", "run one experiment configuration");
  run->add_option("--config", config_path,
                  "key=value file with defaults for these options; explicit "
                  "flags win");
  run->add_option("--problem", problem_name, "problem name (F1..F6)");
  run->add_option("--algo", config.algorithm,
                  "algorithm (dtaea, dtaea-v1..v3, nsga2, dnsga2, moead)");
  run->add_option("--tau", config.tau_t, "generations per time step");
  run->add_option("--pop", config.n_pop, "archive/population capacity");
  run->add_option("--schedule", config.schedule,
                  "objective-count schedule (eq10, eq13, or e.g. 3,4,5)");
  run->add_option("--seeds", seeds_text, "seed list: 1..10 or 1,2,5");
  run->add_option("--warmup", config.warmup_gens,
                  "generations before the first change");
  run->add_option("--ref-size", config.ref_size, "reference front sample count");
  run->add_option("--ref-seed", config.ref_seed, "reference front sampler seed");
  run->add_option("--out", config.out_dir, "output directory");
  run->add_option("--cache", config.cache_dir,
                  "reference cache directory (default: $DMOLAB_CACHE or "
                  "<out>/pf_cache)");
  run->add_flag("--per-gen", config.per_generation_log,
                "log every generation (igd trajectory)");
  run->add_flag("--timing", config.timing,
                "record wall-clock per time step (output no longer "
                "byte-reproducible)");
  run->add_flag("--table1-verbatim", config.table1_verbatim,
                "keep the printed 0.5 factor on the spherical objectives");

  // --- summarize -----------------------------------------------------------
  std::string in_dir = "results";
  std::string summary_out = "summary.csv";
  auto* summarize_cmd =
      app.add_subcommand("summarize", "aggregate trace CSVs into a summary");
  summarize_cmd->add_option("--in", in_dir, "directory holding trace_*.csv");
  summarize_cmd->add_option("--out", summary_out, "summary CSV path");

  // --- plot-data -----------------------------------------------------------
  std::string plot_in = "results";
  std::string plot_out = "plots";
  auto* plot_cmd = app.add_subcommand(
      "plot-data", "emit per-generation median igd trajectories");
  plot_cmd->add_option("--in", plot_in, "directory holding trace_*.csv");
  plot_cmd->add_option("--out", plot_out, "output directory");

  // --- weights ---------------------------------------------------------
  int weights_m = 3;
  std::size_t weights_pop = 300;
  std::string weights_out;
  auto* weights_cmd =
      app.add_subcommand("weights", "generate and dump a weight set");
  weights_cmd->add_option("--m", weights_m, "objective count (2..7)")
      ->required();
  weights_cmd->add_option("--pop", weights_pop,
                          "capacity the set must fit within");
  weights_cmd->add_option("--out", weights_out, "CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (!config_path.empty()) apply_config_file(config_path, *run);
      config.problem = dmolab::problem_from_string(problem_name);
      config.seeds = parse_seeds(seeds_text);
      std::filesystem::create_directories(config.out_dir);
      const dmolab::RunTrace trace = dmolab::run_experiment(config);
      const auto path = dmolab::trace_path(config);
      std::ofstream out(path);
      dmolab::write_trace_csv(trace, out);
      std::cout << "wrote " << trace.rows.size() << " rows to " << path.string()
                << "\n";
    } else if (summarize_cmd->parsed()) {
      const auto rows = dmolab::summarize(load_traces(in_dir));
      std::ofstream out(summary_out);
      dmolab::write_summary_csv(rows, out);
      std::cout << "wrote " << rows.size() << " summary rows to " << summary_out
                << "\n";
    } else if (plot_cmd->parsed()) {
      dmolab::emit_plot_data(load_traces(plot_in), plot_out);
      std::cout << "wrote plot data to " << plot_out << "\n";
    } else if (weights_cmd->parsed()) {
      const dmolab::WeightSet ws =
          dmolab::generate_weights(weights_m, weights_pop);
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!weights_out.empty()) {
        file.open(weights_out);
        out = &file;
      }
      for (int j = 1; j <= ws.m; ++j) (*out) << (j > 1 ? "," : "") << "w" << j;
      (*out) << "\n";
      char buf[40];
      for (const auto& w : ws.vectors) {
        for (std::size_t j = 0; j < w.size(); ++j) {
          std::snprintf(buf, sizeof(buf), "%.17g", w[j]);
          (*out) << (j > 0 ? "," : "") << buf;
        }
        (*out) << "\n";
      }
      std::cerr << ws.size() << " weight vectors for m=" << ws.m << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
