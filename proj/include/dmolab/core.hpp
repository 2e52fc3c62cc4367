#pragma once

#include <cstddef>
#include <vector>

namespace dmolab {

/// Smallest objective range used when normalizing; degenerate ranges are
/// widened to this value so divisions stay well defined.
inline constexpr double kMinRange = 1e-6;

/// A candidate solution. Objectives are only comparable between solutions
/// evaluated in the same environment (same objective count and landscape).
struct Solution {
  std::vector<double> x;  ///< decision vector, each component in [0, 1]
  std::vector<double> f;  ///< objective vector, minimized
  int env_id = 0;         ///< environment the objectives were evaluated in
};

/// Ideal and nadir estimates of a population, componentwise.
struct ObjectiveBounds {
  std::vector<double> ideal;
  std::vector<double> nadir;
};

/// Pareto dominance for minimization: a dominates b iff a is no worse in
/// every objective and strictly better in at least one. Equal vectors do
/// not dominate each other. Throws std::invalid_argument on mismatched
/// lengths.
bool dominates(const std::vector<double>& fa, const std::vector<double>& fb);
bool dominates(const Solution& a, const Solution& b);

/// Fast non-dominated sorting. Returns levels of indices into `pop`;
/// level 0 is the non-dominated front, every solution appears exactly once.
std::vector<std::vector<std::size_t>> non_dominated_sort(
    const std::vector<Solution>& pop);

/// Indices of the non-dominated members of a set of raw objective vectors.
std::vector<std::size_t> non_dominated_indices(
    const std::vector<std::vector<double>>& fs);

/// Ideal = componentwise minimum over the whole population, nadir =
/// componentwise maximum over the first non-domination level only.
/// Degenerate ranges are widened: nadir_i < ideal_i + kMinRange is raised
/// to ideal_i + kMinRange. Throws on an empty population.
ObjectiveBounds estimate_bounds(const std::vector<Solution>& pop);

}  // namespace dmolab
