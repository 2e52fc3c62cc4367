#include "dmolab/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dmolab {

namespace {

constexpr std::size_t kMoeadReplaceCap = 2;

Solution random_solution(const DynamicProblem& problem, int m, int env_id,
                         long tau, Rng& rng) {
  Solution s;
  s.x.resize(static_cast<std::size_t>(problem.n));
  for (double& v : s.x) v = rng.uniform();
  s.f = problem.evaluate(s.x, m, tau);
  s.env_id = env_id;
  return s;
}

void reevaluate(std::vector<Solution>& pop, const DynamicProblem& problem,
                int m, int env_id, long tau) {
  for (Solution& s : pop) {
    s.f = problem.evaluate(s.x, m, tau);
    s.env_id = env_id;
  }
}

}  // namespace

std::vector<double> crowding_distance(const std::vector<Solution>& pop,
                                      const std::vector<std::size_t>& front) {
  const std::size_t k = front.size();
  std::vector<double> cd(k, 0.0);
  if (k == 0) return cd;
  const std::size_t m = pop[front[0]].f.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> order(k);
  for (std::size_t j = 0; j < m; ++j) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return pop[front[a]].f[j] < pop[front[b]].f[j];
                     });
    cd[order.front()] = inf;
    cd[order.back()] = inf;
    const double range =
        pop[front[order.back()]].f[j] - pop[front[order.front()]].f[j];
    if (range <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < k; ++i)
      cd[order[i]] +=
          (pop[front[order[i + 1]]].f[j] - pop[front[order[i - 1]]].f[j]) /
          range;
  }
  return cd;
}

std::vector<Solution> nsga2_survival(const std::vector<Solution>& mixed,
                                     std::size_t n_keep) {
  if (n_keep == 0 || mixed.size() < n_keep)
    throw std::invalid_argument("nsga2_survival: bad target size");
  const auto levels = non_dominated_sort(mixed);
  std::vector<Solution> out;
  out.reserve(n_keep);
  for (const auto& level : levels) {
    if (out.size() + level.size() <= n_keep) {
      for (std::size_t idx : level) out.push_back(mixed[idx]);
      if (out.size() == n_keep) break;
      continue;
    }
    // Boundary front: keep the most spread members.
    const std::vector<double> cd = crowding_distance(mixed, level);
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
    for (std::size_t idx : chosen) out.push_back(mixed[idx]);
    break;
  }
  return out;
}

std::vector<Solution> nsga2_generation(const std::vector<Solution>& pop,
                                       const DynamicProblem& problem, int m,
                                       int env_id, long tau,
                                       const VariationParams& params,
                                       Rng& rng) {
  const std::size_t n = pop.size();
  if (n < 2) throw std::invalid_argument("nsga2_generation: population too small");
  const auto levels = non_dominated_sort(pop);
  std::vector<std::size_t> rank(n, 0);
  std::vector<double> crowding(n, 0.0);
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const std::vector<double> cd = crowding_distance(pop, levels[l]);
    for (std::size_t i = 0; i < levels[l].size(); ++i) {
      rank[levels[l][i]] = l;
      crowding[levels[l][i]] = cd[i];
    }
  }

  auto tournament = [&]() {
    const std::size_t a = rng.index(n);
    const std::size_t b = rng.index(n);
    if (rank[a] != rank[b]) return rank[a] < rank[b] ? a : b;
    if (crowding[a] != crowding[b]) return crowding[a] > crowding[b] ? a : b;
    return a;
  };

  std::vector<Solution> offspring;
  offspring.reserve(n);
  while (offspring.size() < n) {
    const std::size_t pa = tournament();
    const std::size_t pb = tournament();
    auto children = sbx(pop[pa].x, pop[pb].x, params, rng);
    for (std::vector<double>* cx : {&children.first, &children.second}) {
      if (offspring.size() == n) break;
      Solution child;
      child.x = polynomial_mutation(*cx, params, rng);
      child.f = problem.evaluate(child.x, m, tau);
      child.env_id = env_id;
      offspring.push_back(std::move(child));
    }
  }

  std::vector<Solution> mixed = pop;
  mixed.insert(mixed.end(), offspring.begin(), offspring.end());
  return nsga2_survival(mixed, n);
}

std::vector<Solution> injection_on_change(const std::vector<Solution>& pop,
                                          const DynamicProblem& problem,
                                          int new_m, int env_id, long tau,
                                          double fraction, Rng& rng) {
  if (fraction < 0.0 || fraction > 1.0)
    throw std::invalid_argument("injection_on_change: fraction out of [0, 1]");
  std::vector<Solution> out = pop;
  reevaluate(out, problem, new_m, env_id, tau);
  const std::size_t k = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(pop.size())));
  for (std::size_t idx : rng.distinct_indices(k, out.size()))
    out[idx] = random_solution(problem, new_m, env_id, tau, rng);
  return out;
}

std::vector<std::vector<std::size_t>> weight_neighborhoods(
    const WeightSet& weights, std::size_t T) {
  if (T < 2) throw std::invalid_argument("weight_neighborhoods: T must be >= 2");
  const std::size_t W = weights.size();
  const std::size_t t_eff = std::min(T, W);
  std::vector<std::vector<std::size_t>> out(W);
  std::vector<std::pair<double, std::size_t>> dist(W);
  for (std::size_t i = 0; i < W; ++i) {
    for (std::size_t j = 0; j < W; ++j) {
      double d2 = 0.0;
      for (std::size_t c = 0; c < weights.vectors[i].size(); ++c) {
        const double diff = weights.vectors[i][c] - weights.vectors[j][c];
        d2 += diff * diff;
      }
      dist[j] = {d2, j};
    }
    std::sort(dist.begin(), dist.end());
    out[i].reserve(t_eff);
    for (std::size_t k = 0; k < t_eff; ++k) out[i].push_back(dist[k].second);
  }
  return out;
}

MoeadState moead_init(const DynamicProblem& problem, int m, int env_id,
                      long tau, std::size_t T, Rng& rng) {
  MoeadState state;
  state.weights = generate_weights(m);
  state.neighborhoods = weight_neighborhoods(state.weights, T);
  state.pop.reserve(state.weights.size());
  for (std::size_t i = 0; i < state.weights.size(); ++i)
    state.pop.push_back(random_solution(problem, m, env_id, tau, rng));
  state.ideal.assign(static_cast<std::size_t>(m),
                     std::numeric_limits<double>::infinity());
  for (const Solution& s : state.pop)
    for (std::size_t j = 0; j < s.f.size(); ++j)
      state.ideal[j] = std::min(state.ideal[j], s.f[j]);
  return state;
}

void moead_generation(MoeadState& state, const DynamicProblem& problem,
                      int env_id, long tau, const VariationParams& params,
                      Rng& rng) {
  const int m = state.weights.m;
  for (std::size_t i = 0; i < state.pop.size(); ++i) {
    const auto& B = state.neighborhoods[i];
    // Three distinct donors from the neighborhood, none equal to the target.
    std::size_t r[3];
    for (int k = 0; k < 3; ++k) {
      for (;;) {
        const std::size_t cand = B[rng.index(B.size())];
        if (cand == i) continue;
        if (k > 0 && cand == r[0]) continue;
        if (k > 1 && cand == r[1]) continue;
        r[k] = cand;
        break;
      }
    }
    Solution trial;
    trial.x = de_rand_1_bin(state.pop[i].x, state.pop[r[0]].x,
                            state.pop[r[1]].x, state.pop[r[2]].x, params, rng);
    trial.x = polynomial_mutation(trial.x, params, rng);
    trial.f = problem.evaluate(trial.x, m, tau);
    trial.env_id = env_id;
    for (std::size_t j = 0; j < trial.f.size(); ++j)
      state.ideal[j] = std::min(state.ideal[j], trial.f[j]);

    std::size_t replaced = 0;
    for (std::size_t j : B) {
      if (replaced == kMoeadReplaceCap) break;
      const auto& w = state.weights.vectors[j];
      if (tchebycheff(trial.f, w, state.ideal) <
          tchebycheff(state.pop[j].f, w, state.ideal)) {
        state.pop[j] = trial;
        ++replaced;
      }
    }
  }
}

void moead_on_change(MoeadState& state, const DynamicProblem& problem,
                     int new_m, int env_id, long tau, std::size_t T, Rng& rng) {
  state.weights = generate_weights(new_m);
  state.neighborhoods = weight_neighborhoods(state.weights, T);
  const std::size_t W = state.weights.size();
  if (state.pop.size() > W) state.pop.resize(W);
  reevaluate(state.pop, problem, new_m, env_id, tau);
  while (state.pop.size() < W)
    state.pop.push_back(random_solution(problem, new_m, env_id, tau, rng));
  state.ideal.assign(static_cast<std::size_t>(new_m),
                     std::numeric_limits<double>::infinity());
  for (const Solution& s : state.pop)
    for (std::size_t j = 0; j < s.f.size(); ++j)
      state.ideal[j] = std::min(state.ideal[j], s.f[j]);
}

}  // namespace dmolab
