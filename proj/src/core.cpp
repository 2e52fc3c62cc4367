#include "dmolab/core.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dmolab {

bool dominates(const std::vector<double>& fa, const std::vector<double>& fb) {
  if (fa.size() != fb.size() || fa.empty())
    throw std::invalid_argument("dominates: mismatched objective lengths");
  bool strictly_better = false;
  for (std::size_t j = 0; j < fa.size(); ++j) {
    if (fa[j] > fb[j]) return false;
    if (fa[j] < fb[j]) strictly_better = true;
  }
  return strictly_better;
}

bool dominates(const Solution& a, const Solution& b) {
  return dominates(a.f, b.f);
}

std::vector<std::vector<std::size_t>> non_dominated_sort(
    const std::vector<Solution>& pop) {
  const std::size_t n = pop.size();
  if (n == 0) return {};
  const std::size_t m = pop[0].f.size();
  for (const Solution& s : pop)
    if (s.f.size() != m)
      throw std::invalid_argument(
          "non_dominated_sort: mismatched objective lengths");

  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> dom_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(pop[i].f, pop[j].f)) {
        dominated_by[i].push_back(j);
        ++dom_count[j];
      } else if (dominates(pop[j].f, pop[i].f)) {
        dominated_by[j].push_back(i);
        ++dom_count[i];
      }
    }
  }

  std::vector<std::vector<std::size_t>> levels;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i)
    if (dom_count[i] == 0) current.push_back(i);
  while (!current.empty()) {
    levels.push_back(current);
    std::vector<std::size_t> next;
    for (std::size_t i : current)
      for (std::size_t j : dominated_by[i])
        if (--dom_count[j] == 0) next.push_back(j);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return levels;
}

std::vector<std::size_t> non_dominated_indices(
    const std::vector<std::vector<double>>& fs) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < fs.size() && !dominated; ++j)
      if (j != i && dominates(fs[j], fs[i])) dominated = true;
    if (!dominated) out.push_back(i);
  }
  return out;
}

ObjectiveBounds estimate_bounds(const std::vector<Solution>& pop) {
  if (pop.empty())
    throw std::invalid_argument("estimate_bounds: empty population");
  const std::size_t m = pop[0].f.size();
  ObjectiveBounds b;
  b.ideal.assign(m, std::numeric_limits<double>::infinity());
  for (const Solution& s : pop) {
    if (s.f.size() != m)
      throw std::invalid_argument(
          "estimate_bounds: mismatched objective lengths");
    for (std::size_t j = 0; j < m; ++j) b.ideal[j] = std::min(b.ideal[j], s.f[j]);
  }
  // Nadir comes from the first non-domination level only; dominated points
  // must not inflate it.
  auto levels = non_dominated_sort(pop);
  b.nadir.assign(m, -std::numeric_limits<double>::infinity());
  for (std::size_t i : levels.front())
    for (std::size_t j = 0; j < m; ++j)
      b.nadir[j] = std::max(b.nadir[j], pop[i].f[j]);
  for (std::size_t j = 0; j < m; ++j)
    if (b.nadir[j] - b.ideal[j] < kMinRange) b.nadir[j] = b.ideal[j] + kMinRange;
  return b;
}

}  // namespace dmolab
