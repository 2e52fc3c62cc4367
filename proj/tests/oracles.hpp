#pragma once

// Brute-force reference implementations the library versions are checked
// against. Everything here trades speed for obviousness: repeated scans
// instead of incremental bookkeeping, full cell enumeration instead of
// sweeps. Keep this file free of calls into the code under test (the only
// shared pieces are the Solution type and the Rng).

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "dmolab/core.hpp"
#include "dmolab/rng.hpp"

namespace oracle {

inline bool strictly_dominates(const std::vector<double>& a,
                               const std::vector<double>& b) {
  bool any = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] > b[j]) return false;
    if (a[j] < b[j]) any = true;
  }
  return any;
}

/// Non-dominated sorting by repeated extraction of the current
/// non-dominated subset.
inline std::vector<std::vector<std::size_t>> non_dominated_sort(
    const std::vector<dmolab::Solution>& pop) {
  std::vector<std::size_t> remaining(pop.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::vector<std::size_t>> levels;
  while (!remaining.empty()) {
    std::vector<std::size_t> front, rest;
    for (std::size_t i : remaining) {
      bool dominated = false;
      for (std::size_t j : remaining)
        if (j != i && strictly_dominates(pop[j].f, pop[i].f)) {
          dominated = true;
          break;
        }
      (dominated ? rest : front).push_back(i);
    }
    levels.push_back(front);
    remaining = rest;
  }
  return levels;
}

inline std::vector<double> crowding(const std::vector<dmolab::Solution>& pop,
                                    const std::vector<std::size_t>& front) {
  const std::size_t k = front.size();
  std::vector<double> cd(k, 0.0);
  if (k == 0) return cd;
  const std::size_t m = pop[front[0]].f.size();
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return pop[front[a]].f[j] < pop[front[b]].f[j];
                     });
    cd[order.front()] = std::numeric_limits<double>::infinity();
    cd[order.back()] = std::numeric_limits<double>::infinity();
    const double lo = pop[front[order.front()]].f[j];
    const double hi = pop[front[order.back()]].f[j];
    if (hi - lo <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < k; ++i)
      cd[order[i]] += (pop[front[order[i + 1]]].f[j] -
                       pop[front[order[i - 1]]].f[j]) /
                      (hi - lo);
  }
  return cd;
}

/// Indices surviving rank-then-crowding truncation of `mixed` to n_keep,
/// in ascending index order within each admitted group.
inline std::vector<std::size_t> nsga2_survivor_indices(
    const std::vector<dmolab::Solution>& mixed, std::size_t n_keep) {
  std::vector<std::size_t> out;
  for (const auto& level : oracle::non_dominated_sort(mixed)) {
    if (out.size() + level.size() <= n_keep) {
      out.insert(out.end(), level.begin(), level.end());
      if (out.size() == n_keep) break;
      continue;
    }
    const std::vector<double> cd = crowding(mixed, level);
    std::vector<std::size_t> order(level.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (cd[a] != cd[b]) return cd[a] > cd[b];
      return level[a] < level[b];
    });
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n_keep - out.size(); ++i)
      chosen.push_back(level[order[i]]);
    std::sort(chosen.begin(), chosen.end());
    out.insert(out.end(), chosen.begin(), chosen.end());
    break;
  }
  return out;
}

/// Exact hypervolume by full cell decomposition: the coordinates of the
/// points split the bounded box into cells, and a cell lies inside the
/// dominated region iff some point is componentwise <= its lower corner.
/// Cost grows as (n + 1)^m; fine for the small instances it is used on.
inline double hypervolume_grid(const std::vector<std::vector<double>>& points,
                               const std::vector<double>& worst) {
  const std::size_t m = worst.size();
  std::vector<std::vector<double>> kept;
  for (const auto& p : points) {
    bool inside = true;
    for (std::size_t j = 0; j < m && inside; ++j)
      if (!(p[j] < worst[j])) inside = false;
    if (inside) kept.push_back(p);
  }
  if (kept.empty()) return 0.0;

  std::vector<std::vector<double>> grid(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (const auto& p : kept) grid[j].push_back(p[j]);
    grid[j].push_back(worst[j]);
    std::sort(grid[j].begin(), grid[j].end());
    grid[j].erase(std::unique(grid[j].begin(), grid[j].end()), grid[j].end());
  }

  std::vector<std::size_t> idx(m, 0);
  double volume = 0.0;
  for (;;) {
    bool valid = true;
    for (std::size_t j = 0; j < m && valid; ++j)
      if (idx[j] + 1 >= grid[j].size()) valid = false;
    if (valid) {
      bool covered = false;
      for (const auto& p : kept) {
        bool below = true;
        for (std::size_t j = 0; j < m && below; ++j)
          if (p[j] > grid[j][idx[j]]) below = false;
        if (below) {
          covered = true;
          break;
        }
      }
      if (covered) {
        double v = 1.0;
        for (std::size_t j = 0; j < m; ++j)
          v *= grid[j][idx[j] + 1] - grid[j][idx[j]];
        volume += v;
      }
    }
    // Odometer step over the cell indices.
    std::size_t j = 0;
    for (; j < m; ++j) {
      if (++idx[j] < grid[j].size()) break;
      idx[j] = 0;
    }
    if (j == m) break;
  }
  return volume;
}

inline std::vector<dmolab::Solution> random_population(std::size_t n,
                                                       std::size_t m,
                                                       dmolab::Rng& rng,
                                                       double lo = 0.0,
                                                       double hi = 1.0) {
  std::vector<dmolab::Solution> pop(n);
  for (auto& s : pop) {
    s.f.resize(m);
    for (double& v : s.f) v = rng.uniform(lo, hi);
  }
  return pop;
}

}  // namespace oracle
