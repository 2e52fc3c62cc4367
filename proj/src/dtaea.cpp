#include "dmolab/dtaea.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace dmolab {

namespace {

std::vector<Solution> merged(const std::vector<Solution>& a,
                             const std::vector<Solution>& b) {
  std::vector<Solution> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<Solution> reevaluated(std::vector<Solution> pop,
                                  const DynamicProblem& problem, int m,
                                  int env_id, long tau) {
  for (Solution& s : pop) {
    s.f = problem.evaluate(s.x, m, tau);
    s.env_id = env_id;
  }
  return pop;
}

std::vector<Solution> lhs_population(std::size_t count,
                                     const DynamicProblem& problem, int m,
                                     int env_id, long tau, Rng& rng) {
  std::vector<Solution> pop;
  pop.reserve(count);
  for (auto& x : lhs_sample(count, static_cast<std::size_t>(problem.n), rng)) {
    Solution s;
    s.x = std::move(x);
    s.f = problem.evaluate(s.x, m, tau);
    s.env_id = env_id;
    pop.push_back(std::move(s));
  }
  return pop;
}

/// Shrinks `pool` (indices into `sols`) down to `capacity` by the crowded-
/// subspace rule shared between the CA update and the shrink after an
/// objective removal. Survivors keep their relative order. Crowding is
/// judged on the normalized association; the victim within a subspace is
/// the worst raw-objective tchebycheff against the ideal point.
std::vector<std::size_t> shrink_by_density(
    const std::vector<Solution>& sols, std::vector<std::size_t> pool,
    const WeightSet& weights, const ObjectiveBounds& bounds,
    std::size_t capacity, std::vector<CaRemoval>* removal_log) {
  std::vector<Solution> subset;
  subset.reserve(pool.size());
  for (std::size_t idx : pool) subset.push_back(sols[idx]);
  const Association assoc = associate(subset, weights, bounds);

  std::vector<double> gvalue(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i)
    gvalue[i] = tchebycheff(subset[i].f,
                            weights.vectors[assoc.subspace_of[i]], bounds.ideal);

  std::vector<std::size_t> count(weights.size(), 0);
  for (std::size_t k : assoc.subspace_of) ++count[k];
  std::vector<bool> alive(pool.size(), true);
  std::size_t alive_count = pool.size();

  while (alive_count > capacity) {
    std::size_t worst_sub = 0;
    std::size_t worst_sub_count = 0;
    for (std::size_t k = 0; k < count.size(); ++k)
      if (count[k] > worst_sub_count) {
        worst_sub_count = count[k];
        worst_sub = k;
      }
    std::size_t victim = pool.size();
    double victim_g = -1.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!alive[i] || assoc.subspace_of[i] != worst_sub) continue;
      if (gvalue[i] > victim_g ||
          (gvalue[i] == victim_g && pool[i] < pool[victim])) {
        victim_g = gvalue[i];
        victim = i;
      }
    }
    assert(victim < pool.size());
    if (removal_log)
      removal_log->push_back({worst_sub, pool[victim], count});
    alive[victim] = false;
    --count[worst_sub];
    --alive_count;
  }

  std::vector<std::size_t> survivors;
  survivors.reserve(capacity);
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (alive[i]) survivors.push_back(pool[i]);
  return survivors;
}

}  // namespace

std::vector<Solution> update_ca(const std::vector<Solution>& ca,
                                const std::vector<Solution>& offspring,
                                const WeightSet& weights,
                                const ObjectiveBounds& bounds,
                                std::size_t capacity,
                                std::vector<CaRemoval>* removal_log) {
  if (capacity == 0) throw std::invalid_argument("update_ca: zero capacity");
  const std::vector<Solution> pool = merged(ca, offspring);
  const auto levels = non_dominated_sort(pool);

  std::vector<std::size_t> kept;
  for (const auto& level : levels) {
    if (kept.size() >= capacity) break;
    kept.insert(kept.end(), level.begin(), level.end());
  }
  if (kept.size() > capacity)
    kept = shrink_by_density(pool, std::move(kept), weights, bounds, capacity,
                             removal_log);

  std::vector<Solution> out;
  out.reserve(kept.size());
  for (std::size_t idx : kept) out.push_back(pool[idx]);
  return out;
}

std::vector<Solution> update_da(const std::vector<Solution>& ca_new,
                                const std::vector<Solution>& da,
                                const std::vector<Solution>& offspring,
                                const WeightSet& weights,
                                const ObjectiveBounds& bounds,
                                std::size_t capacity) {
  if (capacity == 0) throw std::invalid_argument("update_da: zero capacity");
  const std::vector<Solution> pool = merged(da, offspring);
  assert(pool.size() >= capacity);
  const Association assoc = associate(pool, weights, bounds);
  const Association ca_assoc = associate(ca_new, weights, bounds);

  std::vector<double> gvalue(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i)
    gvalue[i] = tchebycheff(pool[i].f, weights.vectors[assoc.subspace_of[i]],
                            bounds.ideal);

  std::vector<bool> alive(pool.size(), true);
  std::size_t alive_count = pool.size();
  std::vector<std::size_t> chosen;
  chosen.reserve(capacity);

  // Pass itr admits one member into every subspace whose CA coverage is
  // below itr, so sparse regions are served first and densely covered
  // ones only once the target size demands it.
  for (std::size_t itr = 1; chosen.size() < capacity; ++itr) {
    bool progress = false;
    for (std::size_t k = 0; k < weights.size() && chosen.size() < capacity;
         ++k) {
      if (ca_assoc.members[k].size() >= itr) continue;
      std::vector<std::size_t> members;
      for (std::size_t i : assoc.members[k])
        if (alive[i]) members.push_back(i);
      if (members.empty()) continue;
      // Non-dominated filter within the subspace, then best scalarized.
      std::size_t best = pool.size();
      for (std::size_t i : members) {
        bool dominated = false;
        for (std::size_t j : members)
          if (j != i && dominates(pool[j].f, pool[i].f)) {
            dominated = true;
            break;
          }
        if (dominated) continue;
        if (best == pool.size() || gvalue[i] < gvalue[best]) best = i;
      }
      assert(best < pool.size());
      alive[best] = false;
      --alive_count;
      chosen.push_back(best);
      progress = true;
    }
    if (!progress && alive_count == 0) break;  // pool smaller than capacity
  }

  std::vector<Solution> out;
  out.reserve(chosen.size());
  for (std::size_t idx : chosen) out.push_back(pool[idx]);
  return out;
}

MatingPick restricted_mating(std::size_t ca_size, std::size_t da_size,
                             double ca_occupation, Rng& rng) {
  if (ca_size == 0 || da_size == 0)
    throw std::invalid_argument("restricted_mating: empty archive");
  MatingPick pick;
  pick.first = rng.index(ca_size);
  if (rng.uniform() < ca_occupation) {
    pick.second = rng.index(ca_size);
    pick.second_from_da = false;
  } else {
    pick.second = rng.index(da_size);
    pick.second_from_da = true;
  }
  return pick;
}

ArchivePair reconstruct_increase(const std::vector<Solution>& prev_ca,
                                 const DynamicProblem& problem, int new_m,
                                 int env_id, long tau, std::size_t n_pop,
                                 Rng& rng) {
  ArchivePair out;
  out.weights = generate_weights(new_m, n_pop);
  out.ca = reevaluated(prev_ca, problem, new_m, env_id, tau);
  out.da = lhs_population(n_pop, problem, new_m, env_id, tau, rng);
  return out;
}

ArchivePair reconstruct_decrease(const std::vector<Solution>& prev_ca,
                                 const DynamicProblem& problem, int new_m,
                                 int env_id, long tau, std::size_t n_pop,
                                 const VariationParams& variation, Rng& rng) {
  ArchivePair out;
  out.weights = generate_weights(new_m, n_pop);
  const std::vector<Solution> pop =
      reevaluated(prev_ca, problem, new_m, env_id, tau);
  const auto levels = non_dominated_sort(pop);
  const ObjectiveBounds bounds = estimate_bounds(pop);

  std::vector<std::size_t> nd = levels.front();
  if (nd.size() > n_pop)
    nd = shrink_by_density(pop, std::move(nd), out.weights, bounds, n_pop,
                           nullptr);
  for (std::size_t idx : nd) out.ca.push_back(pop[idx]);
  for (std::size_t l = 1; l < levels.size(); ++l)
    for (std::size_t idx : levels[l]) out.da.push_back(pop[idx]);

  // Refill the CA with mutants of sparse-region members.
  while (out.ca.size() < n_pop) {
    const Association assoc = associate(out.ca, out.weights, bounds);
    std::vector<std::size_t> density(out.ca.size());
    for (std::size_t i = 0; i < out.ca.size(); ++i)
      density[i] = assoc.members[assoc.subspace_of[i]].size();
    const std::size_t parent = binary_tournament_by_density(density, rng);
    Solution s;
    s.x = polynomial_mutation(out.ca[parent].x, variation, rng);
    s.f = problem.evaluate(s.x, new_m, tau);
    s.env_id = env_id;
    out.ca.push_back(std::move(s));
  }

  // Top the DA up with fresh space-filling samples.
  if (out.da.size() < n_pop) {
    auto filler = lhs_population(n_pop - out.da.size(), problem, new_m, env_id,
                                 tau, rng);
    for (Solution& s : filler) out.da.push_back(std::move(s));
  }
  return out;
}

ArchivePair step_generation(const ArchivePair& state, const DtaeaConfig& config,
                            const DynamicProblem& problem, int env_id, long tau,
                            Rng& rng) {
  if (state.ca.empty() || state.da.empty())
    throw std::invalid_argument("step_generation: empty archive");
  const int m = state.weights.m;

  double occupation = 0.0;
  if (config.restricted_mating) {
    const ObjectiveBounds mating_bounds =
        estimate_bounds(merged(state.ca, state.da));
    occupation = occupation_rate(associate(state.ca, state.weights, mating_bounds),
                                 state.weights);
  }

  std::vector<Solution> offspring;
  offspring.reserve(config.n_pop);
  for (std::size_t k = 0; k < config.n_pop; ++k) {
    const Solution* p1;
    const Solution* p2;
    if (config.restricted_mating) {
      const MatingPick pick =
          restricted_mating(state.ca.size(), state.da.size(), occupation, rng);
      p1 = &state.ca[pick.first];
      p2 = pick.second_from_da ? &state.da[pick.second] : &state.ca[pick.second];
    } else {
      p1 = &state.ca[rng.index(state.ca.size())];
      p2 = &state.da[rng.index(state.da.size())];
    }
    auto children = sbx(p1->x, p2->x, config.variation, rng);
    Solution child;
    child.x = rng.uniform() < 0.5 ? std::move(children.first)
                                  : std::move(children.second);
    child.x = polynomial_mutation(child.x, config.variation, rng);
    child.f = problem.evaluate(child.x, m, tau);
    child.env_id = env_id;
    offspring.push_back(std::move(child));
  }

  const ObjectiveBounds bounds =
      estimate_bounds(merged(merged(state.ca, state.da), offspring));
  ArchivePair next;
  next.weights = state.weights;
  next.ca = update_ca(state.ca, offspring, state.weights, bounds, config.n_pop);
  next.da = update_da(next.ca, state.da, offspring, state.weights, bounds,
                      config.n_pop);
  return next;
}

void Dtaea::init(const DynamicProblem& problem, int m, int env_id, long tau,
                 Rng& rng) {
  state_.weights = generate_weights(m, config_.n_pop);
  state_.ca.clear();
  state_.ca.reserve(config_.n_pop);
  for (std::size_t i = 0; i < config_.n_pop; ++i) {
    Solution s;
    s.x.resize(static_cast<std::size_t>(problem.n));
    for (double& v : s.x) v = rng.uniform();
    s.f = problem.evaluate(s.x, m, tau);
    s.env_id = env_id;
    state_.ca.push_back(std::move(s));
  }
  state_.da = lhs_population(config_.n_pop, problem, m, env_id, tau, rng);
}

void Dtaea::on_change(const DynamicProblem& problem, int new_m, int env_id,
                      long tau, Rng& rng) {
  const int old_m = state_.weights.m;
  if (!config_.reconstruction || new_m == old_m) {
    state_.weights = generate_weights(new_m, config_.n_pop);
    state_.ca = reevaluated(std::move(state_.ca), problem, new_m, env_id, tau);
    state_.da = reevaluated(std::move(state_.da), problem, new_m, env_id, tau);
    return;
  }
  if (new_m > old_m)
    state_ = reconstruct_increase(state_.ca, problem, new_m, env_id, tau,
                                  config_.n_pop, rng);
  else
    state_ = reconstruct_decrease(state_.ca, problem, new_m, env_id, tau,
                                  config_.n_pop, config_.variation, rng);
}

void Dtaea::step(const DynamicProblem& problem, int env_id, long tau, Rng& rng) {
  state_ = step_generation(state_, config_, problem, env_id, tau, rng);
}

}  // namespace dmolab
