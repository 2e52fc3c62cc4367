#pragma once

#include <cstddef>
#include <vector>

#include "dmolab/core.hpp"
#include "dmolab/decomposition.hpp"
#include "dmolab/problems.hpp"
#include "dmolab/rng.hpp"
#include "dmolab/variation.hpp"

namespace dmolab {

/// Optimizer settings. The two flags switch off the algorithm's two key
/// mechanisms for ablation studies: restricted mating falls back to
/// CA x DA pairing, and with reconstruction off a change only re-evaluates
/// the archives in place.
struct DtaeaConfig {
  std::size_t n_pop = 300;        ///< capacity of each archive
  bool restricted_mating = true;
  bool reconstruction = true;
  VariationParams variation;
};

/// The optimizer state: a convergence archive (CA), a diversity archive
/// (DA), and the weight set for the current objective count. Both archives
/// hold n_pop solutions between generations.
struct ArchivePair {
  std::vector<Solution> ca;
  std::vector<Solution> da;
  WeightSet weights;
};

/// One removal made while truncating the CA, recorded for audits: which
/// subspace was drained, which combined-set index left, and the subspace
/// occupancy counts seen when the choice was made.
struct CaRemoval {
  std::size_t subspace;
  std::size_t solution;
  std::vector<std::size_t> counts;
};

/// CA update: merge the archive with the offspring, take whole
/// non-domination levels until at least `capacity` solutions are kept,
/// then shrink back by repeatedly removing the worst Tchebycheff member
/// of the most crowded subspace. Ties take the lowest subspace index and
/// the lowest combined-set index. Indices in the removal log refer to the
/// merged ca-then-offspring ordering.
std::vector<Solution> update_ca(const std::vector<Solution>& ca,
                                const std::vector<Solution>& offspring,
                                const WeightSet& weights,
                                const ObjectiveBounds& bounds,
                                std::size_t capacity,
                                std::vector<CaRemoval>* removal_log = nullptr);

/// DA update: from the old DA plus offspring, repeatedly sweep the
/// subspaces in index order, and in pass `itr` take the best remaining
/// member (minimum Tchebycheff among the subspace's non-dominated
/// remainder) of every subspace where the new CA holds fewer than `itr`
/// solutions, until `capacity` are chosen. The DA therefore fills exactly
/// the regions the CA covers poorly.
std::vector<Solution> update_da(const std::vector<Solution>& ca_new,
                                const std::vector<Solution>& da,
                                const std::vector<Solution>& offspring,
                                const WeightSet& weights,
                                const ObjectiveBounds& bounds,
                                std::size_t capacity);

/// Mating pair selection. The first parent always comes from the CA; the
/// second comes from the CA with probability `ca_occupation` and from the
/// DA otherwise. Draw order: first index, gate variate, second index.
struct MatingPick {
  std::size_t first;
  std::size_t second;
  bool second_from_da;
};
MatingPick restricted_mating(std::size_t ca_size, std::size_t da_size,
                             double ca_occupation, Rng& rng);

/// Reaction to an added objective: the previous CA is carried over with
/// decision vectors untouched and objectives re-evaluated, while the DA is
/// replaced by a fresh Latin hypercube sample. The old non-dominated set
/// stays non-dominated under the extra objective, so the CA needs no
/// repair.
ArchivePair reconstruct_increase(const std::vector<Solution>& prev_ca,
                                 const DynamicProblem& problem, int new_m,
                                 int env_id, long tau, std::size_t n_pop,
                                 Rng& rng);

/// Reaction to a removed objective: re-evaluate the previous CA, keep its
/// non-dominated subset as the new CA and the dominated remainder as the
/// new DA. The CA is refilled with mutants of density-tournament winners
/// (truncated by the CA rule if overfull), the DA is refilled with Latin
/// hypercube samples.
ArchivePair reconstruct_decrease(const std::vector<Solution>& prev_ca,
                                 const DynamicProblem& problem, int new_m,
                                 int env_id, long tau, std::size_t n_pop,
                                 const VariationParams& variation, Rng& rng);

/// One generation: breed n_pop offspring from archive parents (SBX keeping
/// one child at random, then polynomial mutation), then refresh CA and DA.
/// Normalization bounds are re-estimated from CA, DA and offspring.
ArchivePair step_generation(const ArchivePair& state, const DtaeaConfig& config,
                            const DynamicProblem& problem, int env_id, long tau,
                            Rng& rng);

/// Driver tying the pieces to a run loop: initialization (random CA, Latin
/// hypercube DA), change reaction dispatched on the sign of the objective-
/// count delta, and per-generation stepping.
class Dtaea {
 public:
  explicit Dtaea(DtaeaConfig config) : config_(std::move(config)) {}

  void init(const DynamicProblem& problem, int m, int env_id, long tau,
            Rng& rng);
  void on_change(const DynamicProblem& problem, int new_m, int env_id, long tau,
                 Rng& rng);
  void step(const DynamicProblem& problem, int env_id, long tau, Rng& rng);

  const ArchivePair& archives() const { return state_; }
  const std::vector<Solution>& convergence_archive() const { return state_.ca; }

 private:
  DtaeaConfig config_;
  ArchivePair state_;
};

}  // namespace dmolab
