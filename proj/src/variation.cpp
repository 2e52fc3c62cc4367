#include "dmolab/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmolab {

namespace {

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

/// Parent genes closer than this are copied to the children verbatim instead
/// of blended: the spread-factor arithmetic loses exactness when the values
/// coincide, and copying keeps crossover of identical parents an identity.
constexpr double kSbxEps = 1e-14;

}  // namespace

std::pair<std::vector<double>, std::vector<double>> sbx(
    const std::vector<double>& p1, const std::vector<double>& p2,
    const VariationParams& params, Rng& rng) {
  if (p1.size() != p2.size() || p1.empty())
    throw std::invalid_argument("sbx: mismatched parent lengths");
  std::vector<double> c1 = p1, c2 = p2;
  if (rng.uniform() >= params.p_c) return {c1, c2};
  for (std::size_t i = 0; i < p1.size(); ++i) {
    if (rng.uniform() >= 0.5) continue;
    if (std::abs(p1[i] - p2[i]) <= kSbxEps) continue;
    const double u = rng.uniform();
    double beta;
    if (u < 0.5)
      beta = std::pow(2.0 * u, 1.0 / (params.eta_c + 1.0));
    else
      beta = std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (params.eta_c + 1.0));
    // Spread factor acts on the parent midpoint, so c1 + c2 == p1 + p2
    // exactly; bounds are enforced afterwards.
    c1[i] = clip01(0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]));
    c2[i] = clip01(0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]));
    // The classic operator hands each variable to either child at random, so
    // a child is a per-variable mosaic of both parents rather than a copy of
    // one side. This is what lets crossover recombine converged variables
    // from one parent with exploratory values from the other.
    if (rng.uniform() < 0.5) std::swap(c1[i], c2[i]);
  }
  return {c1, c2};
}

std::vector<double> polynomial_mutation(const std::vector<double>& x,
                                        const VariationParams& params, Rng& rng) {
  std::vector<double> y = x;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (rng.uniform() >= params.p_m) continue;
    const double v = y[i];
    const double u = rng.uniform();
    const double exponent = 1.0 / (params.eta_m + 1.0);
    double delta;
    if (u < 0.5) {
      const double d = v;  // distance to the lower bound of [0, 1]
      double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d, params.eta_m + 1.0);
      delta = std::pow(val, exponent) - 1.0;
    } else {
      const double d = 1.0 - v;  // distance to the upper bound
      double val = 2.0 * (1.0 - u) +
                   (2.0 * u - 1.0) * std::pow(1.0 - d, params.eta_m + 1.0);
      delta = 1.0 - std::pow(val, exponent);
    }
    y[i] = clip01(v + delta);
  }
  return y;
}

std::vector<double> de_rand_1_bin(const std::vector<double>& target,
                                  const std::vector<double>& r1,
                                  const std::vector<double>& r2,
                                  const std::vector<double>& r3,
                                  const VariationParams& params, Rng& rng) {
  const std::size_t n = target.size();
  if (r1.size() != n || r2.size() != n || r3.size() != n || n == 0)
    throw std::invalid_argument("de_rand_1_bin: mismatched vector lengths");
  std::vector<double> trial = target;
  const std::size_t jrand = rng.index(n);
  for (std::size_t j = 0; j < n; ++j) {
    const bool cross = rng.uniform() < params.de_cr;
    if (cross || j == jrand)
      trial[j] = clip01(r1[j] + params.de_f * (r2[j] - r3[j]));
  }
  return trial;
}

std::vector<std::vector<double>> lhs_sample(std::size_t count, std::size_t dim,
                                            Rng& rng) {
  if (count == 0 || dim == 0)
    throw std::invalid_argument("lhs_sample: count and dim must be positive");
  std::vector<std::vector<double>> points(count, std::vector<double>(dim));
  std::vector<std::size_t> perm(count);
  for (std::size_t d = 0; d < dim; ++d) {
    for (std::size_t k = 0; k < count; ++k) perm[k] = k;
    rng.shuffle(perm);
    for (std::size_t k = 0; k < count; ++k)
      points[k][d] = (static_cast<double>(perm[k]) + rng.uniform()) /
                     static_cast<double>(count);
  }
  return points;
}

std::size_t binary_tournament_by_density(const std::vector<std::size_t>& density,
                                         Rng& rng) {
  if (density.empty())
    throw std::invalid_argument("binary_tournament_by_density: empty pool");
  const std::size_t a = rng.index(density.size());
  const std::size_t b = rng.index(density.size());
  if (density[a] < density[b]) return a;
  if (density[b] < density[a]) return b;
  return rng.uniform() < 0.5 ? a : b;
}

}  // namespace dmolab
