#pragma once

#include <cstddef>
#include <vector>

#include "dmolab/core.hpp"

namespace dmolab {

/// A set of uniformly spread weight vectors on the (m-1)-simplex. Each
/// vector defines one subspace used for density estimation and
/// scalarization.
struct WeightSet {
  std::vector<std::vector<double>> vectors;
  int m = 0;

  std::size_t size() const { return vectors.size(); }
};

/// Simplex-lattice design with h divisions per objective: all vectors
/// (i_1/h, ..., i_m/h) with non-negative integers summing to h. Count is
/// C(h + m - 1, m - 1). Enumeration order is lexicographic with the first
/// coordinate descending, which fixes subspace indices for tie-breaking.
WeightSet simplex_lattice(int h, int m);

/// Weight vectors for m objectives using the preset layer parameters:
/// a single layer for m <= 4 (h = 299, 23, 10), and a boundary layer plus
/// an inner layer shrunk toward the simplex centre (w <- 0.5 w + 0.5/m)
/// for m = 5, 6, 7 (h = 6/4, 5/2, 4/3). Counts: 300, 300, 286, 280, 273,
/// 294 for m = 2..7. Throws outside [2, 7].
WeightSet generate_weights(int m);

/// Like generate_weights(m), but sized to a population: the densest lattice
/// of the same shape (single layer for m <= 4, boundary plus shrunk inner
/// layer for m = 5, 6, 7) whose count does not exceed `capacity`. Ties
/// prefer the denser boundary layer. Capacity 300 reproduces the preset
/// counts above; capacities below the sparsest lattice fall back to it
/// (h = 1, giving m or 2m vectors). Throws outside m in [2, 7].
WeightSet generate_weights(int m, std::size_t capacity);

/// Componentwise normalization fbar_j = (f_j - ideal_j) / (nadir_j -
/// ideal_j) with the denominator floored at kMinRange.
std::vector<double> normalize(const std::vector<double>& f,
                              const ObjectiveBounds& bounds);

/// Distance from point `fbar` to the ray through weight vector `w`.
/// Throws if w is the zero vector.
double perpendicular_distance(const std::vector<double>& fbar,
                              const std::vector<double>& w);

/// Result of assigning each population member to its nearest weight
/// subspace (in normalized objective space, by perpendicular distance,
/// ties to the lowest subspace index).
struct Association {
  std::vector<std::size_t> subspace_of;            ///< per solution
  std::vector<std::vector<std::size_t>> members;   ///< per subspace
};

Association associate(const std::vector<Solution>& pop, const WeightSet& weights,
                      const ObjectiveBounds& bounds);

/// Tchebycheff scalarization g(f | w, z) = max_j |f_j - z_j| / w_j with
/// each w_j floored at kMinRange so axis weights stay usable.
double tchebycheff(const std::vector<double>& f, const std::vector<double>& w,
                   const std::vector<double>& ideal);

/// Fraction of subspaces holding at least one associated solution.
double occupation_rate(const Association& assoc, const WeightSet& weights);

}  // namespace dmolab
