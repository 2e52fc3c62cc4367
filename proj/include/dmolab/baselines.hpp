#pragma once

#include <cstddef>
#include <vector>

#include "dmolab/core.hpp"
#include "dmolab/decomposition.hpp"
#include "dmolab/problems.hpp"
#include "dmolab/rng.hpp"
#include "dmolab/variation.hpp"

namespace dmolab {

/// Crowding distance per front member: boundary members of each objective
/// get infinity, interior members accumulate the normalized span of their
/// neighbors. Objectives with zero range contribute nothing. `front` holds
/// indices into `pop`; the result is aligned with `front`.
std::vector<double> crowding_distance(const std::vector<Solution>& pop,
                                      const std::vector<std::size_t>& front);

/// Elitist survival: rank the mixed parent+offspring population, keep whole
/// fronts while they fit, and cut the boundary front by descending crowding
/// distance (ties keep the lower index).
std::vector<Solution> nsga2_survival(const std::vector<Solution>& mixed,
                                     std::size_t n_keep);

/// One generation of the dominance-based baseline: binary-tournament mating
/// on (rank, crowding), SBX plus polynomial mutation producing n offspring,
/// then elitist survival over parents and offspring.
std::vector<Solution> nsga2_generation(const std::vector<Solution>& pop,
                                       const DynamicProblem& problem, int m,
                                       int env_id, long tau,
                                       const VariationParams& params, Rng& rng);

/// Change response of the injection variant: re-evaluate everyone, then
/// replace ceil(fraction * n) members, chosen uniformly without
/// replacement, by fresh uniform random solutions.
std::vector<Solution> injection_on_change(const std::vector<Solution>& pop,
                                          const DynamicProblem& problem,
                                          int new_m, int env_id, long tau,
                                          double fraction, Rng& rng);

/// Decomposition baseline state. The population has exactly one member per
/// weight vector; `ideal` is the componentwise minimum seen in the current
/// environment and never increases between changes.
struct MoeadState {
  std::vector<Solution> pop;
  WeightSet weights;
  std::vector<std::vector<std::size_t>> neighborhoods;
  std::vector<double> ideal;
};

/// T nearest weight vectors (by Euclidean distance, self included, ties by
/// lower index) for every weight vector.
std::vector<std::vector<std::size_t>> weight_neighborhoods(
    const WeightSet& weights, std::size_t T);

MoeadState moead_init(const DynamicProblem& problem, int m, int env_id,
                      long tau, std::size_t T, Rng& rng);

/// One generation: for each subproblem breed a differential-evolution trial
/// from three distinct neighbors, mutate, evaluate, update the ideal point,
/// and replace at most two neighbors whose scalarized value is worse than
/// the trial's.
void moead_generation(MoeadState& state, const DynamicProblem& problem,
                      int env_id, long tau, const VariationParams& params,
                      Rng& rng);

/// Change response: regenerate weights and neighborhoods for the new
/// objective count, resize the population to the new weight count (keeping
/// a prefix, padding with fresh random solutions), re-evaluate everyone and
/// reset the ideal point.
void moead_on_change(MoeadState& state, const DynamicProblem& problem,
                     int new_m, int env_id, long tau, std::size_t T, Rng& rng);

}  // namespace dmolab
