#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dmolab {

/// Per-time-step metric values collected over one run.
struct MetricRecord {
  int time_step = 0;
  int m = 0;
  double igd = 0.0;
  double hv_norm = 0.0;
};

/// Inverted generational distance: mean over the reference set of the
/// Euclidean distance to the nearest approximation point. Throws if either
/// set is empty.
double igd(const std::vector<std::vector<double>>& reference,
           const std::vector<std::vector<double>>& approx);

/// Hypervolume of the region dominated by `points` and bounded by `worst`.
/// Points not strictly below `worst` in every coordinate are discarded; if
/// none remain the value is 0. Exact for two and three objectives (sweep),
/// Monte Carlo with `mc_samples` seeded draws otherwise.
double hypervolume(const std::vector<std::vector<double>>& points,
                   const std::vector<double>& worst,
                   std::uint64_t mc_seed = 0x51ab5eedULL,
                   std::size_t mc_samples = 1000000);

/// Monte Carlo estimate usable at any dimension; exposed so the estimator
/// can be validated against the exact sweep.
double hypervolume_monte_carlo(const std::vector<std::vector<double>>& points,
                               const std::vector<double>& worst,
                               std::uint64_t seed, std::size_t samples);

/// Means of the per-time-step values over a run.
double migd(const std::vector<MetricRecord>& records);
double mhv(const std::vector<MetricRecord>& records);

/// Average rank per algorithm across positions. Each algorithm supplies
/// one value per position (all vectors equally long); ranks are assigned
/// per position starting at 1, ties share the average of the ranks they
/// span, and the per-position ranks are then averaged.
std::map<std::string, double> rank_algorithms(
    const std::map<std::string, std::vector<double>>& values,
    bool lower_is_better = true);

}  // namespace dmolab
