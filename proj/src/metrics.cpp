#include "dmolab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dmolab/rng.hpp"

namespace dmolab {

namespace {

/// Keep only points strictly inside the box bounded above by `worst`;
/// anything else encloses zero volume.
std::vector<std::vector<double>> clip_to_worst(
    const std::vector<std::vector<double>>& points,
    const std::vector<double>& worst) {
  std::vector<std::vector<double>> kept;
  for (const auto& p : points) {
    if (p.size() != worst.size())
      throw std::invalid_argument("hypervolume: mismatched objective lengths");
    bool inside = true;
    for (std::size_t j = 0; j < p.size() && inside; ++j)
      if (!(p[j] < worst[j])) inside = false;
    if (inside) kept.push_back(p);
  }
  return kept;
}

/// Exact 2D hypervolume by staircase sweep. Assumes points are inside.
double hv2(std::vector<std::vector<double>> pts, double w1, double w2) {
  std::sort(pts.begin(), pts.end());
  double volume = 0.0;
  double best_f2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i][1] >= best_f2) continue;  // dominated within the sweep
    double next_f1 = w1;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[j][1] < pts[i][1]) {
        next_f1 = pts[j][0];
        break;
      }
    }
    volume += (next_f1 - pts[i][0]) * (w2 - pts[i][1]);
    best_f2 = pts[i][1];
  }
  return volume;
}

/// Exact 3D hypervolume: slice along the third objective and accumulate
/// 2D staircase areas between consecutive slice heights.
double hv3(const std::vector<std::vector<double>>& pts,
           const std::vector<double>& worst) {
  std::vector<double> zs;
  zs.reserve(pts.size());
  for (const auto& p : pts) zs.push_back(p[2]);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  double volume = 0.0;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const double z_hi = (k + 1 < zs.size()) ? zs[k + 1] : worst[2];
    std::vector<std::vector<double>> slice;
    for (const auto& p : pts)
      if (p[2] <= zs[k]) slice.push_back({p[0], p[1]});
    volume += hv2(std::move(slice), worst[0], worst[1]) * (z_hi - zs[k]);
  }
  return volume;
}

}  // namespace

double igd(const std::vector<std::vector<double>>& reference,
           const std::vector<std::vector<double>>& approx) {
  if (reference.empty()) throw std::invalid_argument("igd: empty reference set");
  if (approx.empty()) throw std::invalid_argument("igd: empty approximation set");
  double total = 0.0;
  for (const auto& r : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : approx) {
      if (a.size() != r.size())
        throw std::invalid_argument("igd: mismatched objective lengths");
      double d2 = 0.0;
      for (std::size_t j = 0; j < r.size(); ++j) {
        const double diff = a[j] - r[j];
        d2 += diff * diff;
      }
      best = std::min(best, d2);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

double hypervolume(const std::vector<std::vector<double>>& points,
                   const std::vector<double>& worst, std::uint64_t mc_seed,
                   std::size_t mc_samples) {
  if (worst.size() < 2)
    throw std::invalid_argument("hypervolume: need at least two objectives");
  const auto kept = clip_to_worst(points, worst);
  if (kept.empty()) return 0.0;
  if (worst.size() == 2) return hv2(kept, worst[0], worst[1]);
  if (worst.size() == 3) return hv3(kept, worst);
  return hypervolume_monte_carlo(kept, worst, mc_seed, mc_samples);
}

double hypervolume_monte_carlo(const std::vector<std::vector<double>>& points,
                               const std::vector<double>& worst,
                               std::uint64_t seed, std::size_t samples) {
  if (samples == 0)
    throw std::invalid_argument("hypervolume_monte_carlo: zero samples");
  auto kept = clip_to_worst(points, worst);
  if (kept.empty()) return 0.0;
  const std::size_t m = worst.size();

  // Sampling box: the dominated region is contained in
  // [componentwise min, worst].
  std::vector<double> lower(m, std::numeric_limits<double>::infinity());
  for (const auto& p : kept)
    for (std::size_t j = 0; j < m; ++j) lower[j] = std::min(lower[j], p[j]);
  double box = 1.0;
  for (std::size_t j = 0; j < m; ++j) box *= worst[j] - lower[j];
  if (box <= 0.0) return 0.0;

  // Sorting by the first objective lets the scan stop early.
  std::sort(kept.begin(), kept.end());
  Rng rng(seed);
  std::vector<double> s(m);
  std::size_t hits = 0;
  for (std::size_t it = 0; it < samples; ++it) {
    for (std::size_t j = 0; j < m; ++j)
      s[j] = lower[j] + (worst[j] - lower[j]) * rng.uniform();
    for (const auto& p : kept) {
      if (p[0] > s[0]) break;
      bool dominated = true;
      for (std::size_t j = 1; j < m && dominated; ++j)
        if (p[j] > s[j]) dominated = false;
      if (dominated) {
        ++hits;
        break;
      }
    }
  }
  return box * static_cast<double>(hits) / static_cast<double>(samples);
}

double migd(const std::vector<MetricRecord>& records) {
  if (records.empty()) throw std::invalid_argument("migd: no records");
  double s = 0.0;
  for (const auto& r : records) s += r.igd;
  return s / static_cast<double>(records.size());
}

double mhv(const std::vector<MetricRecord>& records) {
  if (records.empty()) throw std::invalid_argument("mhv: no records");
  double s = 0.0;
  for (const auto& r : records) s += r.hv_norm;
  return s / static_cast<double>(records.size());
}

std::map<std::string, double> rank_algorithms(
    const std::map<std::string, std::vector<double>>& values,
    bool lower_is_better) {
  if (values.empty()) throw std::invalid_argument("rank_algorithms: no data");
  const std::size_t count = values.begin()->second.size();
  if (count == 0) throw std::invalid_argument("rank_algorithms: no positions");
  for (const auto& [name, vals] : values)
    if (vals.size() != count)
      throw std::invalid_argument("rank_algorithms: unequal value counts");

  std::map<std::string, double> total;
  for (const auto& [name, vals] : values) total[name] = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<std::pair<double, std::string>> order;
    for (const auto& [name, vals] : values)
      order.emplace_back(lower_is_better ? vals[k] : -vals[k], name);
    std::sort(order.begin(), order.end());
    // Tied values share the average of the ranks they would occupy.
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j + 1 < order.size() && order[j + 1].first == order[i].first) ++j;
      const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t k2 = i; k2 <= j; ++k2) total[order[k2].second] += shared;
      i = j + 1;
    }
  }
  for (auto& [name, sum] : total) sum /= static_cast<double>(count);
  return total;
}

}  // namespace dmolab
