#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dmolab/rng.hpp"

namespace dmolab {

/// Operator parameters. p_m defaults to 1/dim via for_dimension(); the
/// remaining defaults are the usual real-coded settings.
struct VariationParams {
  double eta_c = 20.0;  ///< SBX distribution index
  double eta_m = 20.0;  ///< polynomial mutation distribution index
  double p_c = 1.0;     ///< SBX crossover probability
  double p_m = 0.0;     ///< per-variable mutation probability
  double de_cr = 0.5;   ///< DE crossover rate
  double de_f = 0.5;    ///< DE scale factor

  static VariationParams for_dimension(std::size_t dim) {
    VariationParams p;
    p.p_m = 1.0 / static_cast<double>(dim);
    return p;
  }
};

/// Simulated binary crossover on [0, 1]^n. With probability p_c the pair
/// is recombined; each variable is crossed with probability 0.5 and
/// otherwise copied. Child means equal parent means before clipping.
std::pair<std::vector<double>, std::vector<double>> sbx(
    const std::vector<double>& p1, const std::vector<double>& p2,
    const VariationParams& params, Rng& rng);

/// Bounded polynomial mutation on [0, 1]^n; each variable mutates with
/// probability p_m.
std::vector<double> polynomial_mutation(const std::vector<double>& x,
                                        const VariationParams& params, Rng& rng);

/// DE/rand/1/bin trial vector: v = r1 + F (r2 - r3), binomial crossover
/// with the target, one guaranteed donor variable, clipped to [0, 1].
std::vector<double> de_rand_1_bin(const std::vector<double>& target,
                                  const std::vector<double>& r1,
                                  const std::vector<double>& r2,
                                  const std::vector<double>& r3,
                                  const VariationParams& params, Rng& rng);

/// Latin hypercube sample of `count` points in [0, 1]^dim: every dimension
/// is split into `count` strata, each stratum hit exactly once, position
/// within a stratum uniform.
std::vector<std::vector<double>> lhs_sample(std::size_t count, std::size_t dim,
                                            Rng& rng);

/// Draws two pool indices with replacement and returns the one whose
/// density is lower; ties are decided by a fair coin. A pool of one
/// always returns index 0.
std::size_t binary_tournament_by_density(const std::vector<std::size_t>& density,
                                         Rng& rng);

}  // namespace dmolab
