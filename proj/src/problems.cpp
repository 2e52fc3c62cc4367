#include "dmolab/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dmolab/rng.hpp"

namespace dmolab {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double v) { return v * v; }

/// Multimodal Rastrigin-style distance function over x_m..x_n (1-based).
double g_multimodal(const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  double s = static_cast<double>(n - m + 1);
  for (int i = m - 1; i < n; ++i)
    s += sq(x[i] - 0.5) - std::cos(20.0 * kPi * (x[i] - 0.5));
  return 100.0 * s;
}

double g_sphere(const std::vector<double>& x, int m, double centre) {
  double s = 0.0;
  for (int i = m - 1; i < static_cast<int>(x.size()); ++i)
    s += sq(x[i] - centre);
  return s;
}

}  // namespace

ProblemId problem_from_string(std::string_view name) {
  if (name.size() == 2 && (name[0] == 'F' || name[0] == 'f') &&
      name[1] >= '1' && name[1] <= '6')
    return static_cast<ProblemId>(name[1] - '1');
  throw std::invalid_argument("unknown problem: " + std::string(name));
}

const char* to_string(ProblemId id) {
  static const char* names[] = {"F1", "F2", "F3", "F4", "F5", "F6"};
  return names[static_cast<int>(id)];
}

DynamicProblem DynamicProblem::make(ProblemId id) {
  DynamicProblem p;
  p.id = id;
  p.n = (id == ProblemId::F1) ? 11 : 16;
  return p;
}

double DynamicProblem::drift_time(long tau) const {
  if (tau < 0) throw std::invalid_argument("drift_time: negative tau");
  return static_cast<double>(tau / tau_bar) / static_cast<double>(n_bar);
}

double DynamicProblem::drift_value(long tau) const {
  return std::abs(std::sin(0.5 * kPi * drift_time(tau)));
}

double DynamicProblem::position_exponent(long tau) const {
  const double s = std::sin(0.5 * kPi * drift_time(tau));
  return 1.0 + 100.0 * sq(sq(s));
}

std::vector<double> DynamicProblem::evaluate(const std::vector<double>& x,
                                             int m, long tau) const {
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("evaluate: wrong decision vector length");
  if (m < 2 || m > n)
    throw std::invalid_argument("evaluate: objective count out of range");
  for (double v : x)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("evaluate: decision variable outside [0, 1]");

  // Distance value over the last n - m + 1 variables.
  double g = 0.0;
  switch (id) {
    case ProblemId::F1:
    case ProblemId::F3: g = g_multimodal(x, m); break;
    case ProblemId::F2:
    case ProblemId::F4: g = g_sphere(x, m, 0.5); break;
    case ProblemId::F5: g = g_sphere(x, m, drift_value(tau)); break;
    case ProblemId::F6: {
      const double G = drift_value(tau);
      g = G + g_sphere(x, m, G);
      break;
    }
  }

  // Position variables, possibly biased by an exponent.
  std::vector<double> y(x.begin(), x.begin() + (m - 1));
  if (id == ProblemId::F4)
    for (double& v : y) v = std::pow(v, alpha);
  else if (id == ProblemId::F6) {
    const double e = position_exponent(tau);
    for (double& v : y) v = std::pow(v, e);
  }

  std::vector<double> f(m);
  if (id == ProblemId::F1) {
    // Linear simplex shape: objectives sum to (1 + g) / 2.
    for (int j = 1; j <= m; ++j) {
      double v = 0.5 * (1.0 + g);
      for (int i = 1; i <= m - j; ++i) v *= y[i - 1];
      if (j > 1) v *= 1.0 - y[m - j];
      f[j - 1] = v;
    }
  } else {
    // Spherical shape: the front is the unit-sphere octant scaled by 1 + g.
    const double scale = table1_verbatim ? 0.5 : 1.0;
    for (int j = 1; j <= m; ++j) {
      double v = 1.0 + g;
      if (j < m) v *= scale;
      for (int i = 1; i <= m - j; ++i) v *= std::cos(0.5 * kPi * y[i - 1]);
      if (j > 1) v *= std::sin(0.5 * kPi * y[m - j]);
      f[j - 1] = v;
    }
  }
  return f;
}

std::vector<std::vector<double>> DynamicProblem::sample_pf(
    int m, long tau, std::size_t count, std::uint64_t seed) const {
  if (m < 2 || m > n)
    throw std::invalid_argument("sample_pf: objective count out of range");
  Rng rng(seed);
  std::vector<std::vector<double>> pf;
  pf.reserve(count);
  const double radius =
      (id == ProblemId::F6) ? 1.0 + drift_value(tau) : 1.0;
  while (pf.size() < count) {
    // Exponential spacings give a uniform sample on the simplex.
    std::vector<double> v(m);
    double sum = 0.0;
    for (double& vi : v) {
      vi = -std::log(1.0 - rng.uniform());
      sum += vi;
    }
    if (sum <= 0.0) continue;
    for (double& vi : v) vi /= sum;
    if (id == ProblemId::F1) {
      for (double& vi : v) vi *= 0.5;
    } else {
      double norm = 0.0;
      for (double vi : v) norm += vi * vi;
      norm = std::sqrt(norm);
      if (norm <= 0.0) continue;
      for (double& vi : v) vi *= radius / norm;
    }
    pf.push_back(std::move(v));
  }
  return pf;
}

ChangeSchedule ChangeSchedule::ramp(int warmup_gens, int tau_t) {
  return custom({3, 4, 5, 6, 7, 6, 5, 4, 3, 2}, warmup_gens, tau_t);
}

ChangeSchedule ChangeSchedule::leap(int warmup_gens, int tau_t) {
  return custom({3, 5, 7, 5, 3, 2}, warmup_gens, tau_t);
}

ChangeSchedule ChangeSchedule::custom(const std::vector<int>& ms,
                                      int warmup_gens, int tau_t) {
  if (ms.empty()) throw std::invalid_argument("schedule: no steps");
  if (warmup_gens < 1 || tau_t < 1)
    throw std::invalid_argument("schedule: warmup_gens and tau_t must be >= 1");
  ChangeSchedule s;
  s.warmup_gens = warmup_gens;
  s.tau_t = tau_t;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i] < 2 || ms[i] > 7)
      throw std::invalid_argument("schedule: m out of [2, 7]");
    s.steps.emplace_back(static_cast<int>(i) + 1, ms[i]);
  }
  return s;
}

int ChangeSchedule::m_of(int t) const {
  if (t < 1 || t > num_steps())
    throw std::invalid_argument("m_of: time step out of range");
  return steps[static_cast<std::size_t>(t) - 1].second;
}

}  // namespace dmolab
