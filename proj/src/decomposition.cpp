#include "dmolab/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmolab {

namespace {

void lattice_recurse(int h, int m, int depth, int remaining,
                     std::vector<double>& current,
                     std::vector<std::vector<double>>& out) {
  if (depth == m - 1) {
    current[depth] = static_cast<double>(remaining) / h;
    out.push_back(current);
    return;
  }
  for (int i = remaining; i >= 0; --i) {
    current[depth] = static_cast<double>(i) / h;
    lattice_recurse(h, m, depth + 1, remaining - i, current, out);
  }
}

/// Lattice point count C(h + m - 1, m - 1).
std::size_t lattice_count(int h, int m) {
  std::size_t count = 1;
  for (int j = 1; j < m; ++j)
    count = count * static_cast<std::size_t>(h + j) /
            static_cast<std::size_t>(j);
  return count;
}

/// Largest h >= 1 with a lattice of at most `capacity` points; h = 1 even
/// when its m points already exceed the capacity.
int densest_layer(int m, std::size_t capacity) {
  int h = 1;
  while (lattice_count(h + 1, m) <= capacity) ++h;
  return h;
}

WeightSet two_layer(int h_boundary, int h_inner, int m) {
  WeightSet ws = simplex_lattice(h_boundary, m);
  WeightSet inner = simplex_lattice(h_inner, m);
  for (std::vector<double>& w : inner.vectors) {
    for (double& wj : w) wj = 0.5 * wj + 0.5 / m;
    ws.vectors.push_back(std::move(w));
  }
  return ws;
}

}  // namespace

WeightSet simplex_lattice(int h, int m) {
  if (h < 1 || m < 2)
    throw std::invalid_argument("simplex_lattice: need h >= 1 and m >= 2");
  WeightSet ws;
  ws.m = m;
  std::vector<double> current(m, 0.0);
  lattice_recurse(h, m, 0, h, current, ws.vectors);
  return ws;
}

WeightSet generate_weights(int m) {
  switch (m) {
    case 2: return simplex_lattice(299, m);
    case 3: return simplex_lattice(23, m);
    case 4: return simplex_lattice(10, m);
    case 5: return two_layer(6, 4, m);
    case 6: return two_layer(5, 2, m);
    case 7: return two_layer(4, 3, m);
    default:
      throw std::invalid_argument("generate_weights: m must be in [2, 7]");
  }
}

WeightSet generate_weights(int m, std::size_t capacity) {
  if (m < 2 || m > 7)
    throw std::invalid_argument("generate_weights: m must be in [2, 7]");
  if (m <= 4) return simplex_lattice(densest_layer(m, capacity), m);

  // Two layers: maximize the total count under the capacity, preferring a
  // denser boundary layer on ties. A boundary layer alone serves when not
  // even the sparsest pair (h1 = h2 = 1, 2m points) fits.
  int best_h1 = 0, best_h2 = 0;
  std::size_t best_total = 0;
  for (int h1 = 1;; ++h1) {
    const std::size_t boundary = lattice_count(h1, m);
    if (boundary + static_cast<std::size_t>(m) > capacity) break;
    const std::size_t room = capacity - boundary;
    int h2 = 1;
    while (lattice_count(h2 + 1, m) <= room) ++h2;
    const std::size_t total = boundary + lattice_count(h2, m);
    if (total > best_total || (total == best_total && h1 > best_h1)) {
      best_total = total;
      best_h1 = h1;
      best_h2 = h2;
    }
  }
  if (best_h1 == 0) return simplex_lattice(densest_layer(m, capacity), m);
  return two_layer(best_h1, best_h2, m);
}

std::vector<double> normalize(const std::vector<double>& f,
                              const ObjectiveBounds& bounds) {
  if (f.size() != bounds.ideal.size() || f.size() != bounds.nadir.size())
    throw std::invalid_argument("normalize: mismatched lengths");
  std::vector<double> fbar(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    double range = std::max(bounds.nadir[j] - bounds.ideal[j], kMinRange);
    fbar[j] = (f[j] - bounds.ideal[j]) / range;
  }
  return fbar;
}

double perpendicular_distance(const std::vector<double>& fbar,
                              const std::vector<double>& w) {
  if (fbar.size() != w.size())
    throw std::invalid_argument("perpendicular_distance: mismatched lengths");
  double ww = 0.0, fw = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    ww += w[j] * w[j];
    fw += fbar[j] * w[j];
  }
  if (ww == 0.0)
    throw std::invalid_argument("perpendicular_distance: zero weight vector");
  const double scale = fw / ww;
  double d2 = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    double r = fbar[j] - scale * w[j];
    d2 += r * r;
  }
  return std::sqrt(d2);
}

Association associate(const std::vector<Solution>& pop, const WeightSet& weights,
                      const ObjectiveBounds& bounds) {
  Association assoc;
  assoc.subspace_of.resize(pop.size());
  assoc.members.resize(weights.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const std::vector<double> fbar = normalize(pop[i].f, bounds);
    std::size_t best = 0;
    double best_d = perpendicular_distance(fbar, weights.vectors[0]);
    for (std::size_t k = 1; k < weights.size(); ++k) {
      double d = perpendicular_distance(fbar, weights.vectors[k]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    assoc.subspace_of[i] = best;
    assoc.members[best].push_back(i);
  }
  return assoc;
}

double tchebycheff(const std::vector<double>& f, const std::vector<double>& w,
                   const std::vector<double>& ideal) {
  if (f.size() != w.size() || f.size() != ideal.size())
    throw std::invalid_argument("tchebycheff: mismatched lengths");
  double g = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j)
    g = std::max(g, std::abs(f[j] - ideal[j]) / std::max(w[j], kMinRange));
  return g;
}

double occupation_rate(const Association& assoc, const WeightSet& weights) {
  if (weights.size() == 0)
    throw std::invalid_argument("occupation_rate: empty weight set");
  std::size_t occupied = 0;
  for (const auto& members : assoc.members)
    if (!members.empty()) ++occupied;
  return static_cast<double>(occupied) / static_cast<double>(weights.size());
}

}  // namespace dmolab
