#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dmolab {

/// The six dynamic benchmark problems. All share the box [0, 1]^n and a
/// variable objective count m; they differ in front shape (linear simplex
/// for F1, unit-sphere octant otherwise), distance landscape (unimodal or
/// multimodal), position-variable bias, and whether the landscape drifts
/// over time (F5, F6).
enum class ProblemId { F1, F2, F3, F4, F5, F6 };

ProblemId problem_from_string(std::string_view name);
const char* to_string(ProblemId id);

struct DynamicProblem {
  ProblemId id = ProblemId::F2;
  int n = 16;            ///< decision dimension (11 for F1, 16 otherwise)
  double alpha = 100.0;  ///< position bias exponent (F4)
  int tau_bar = 5;       ///< generations per drift tick (F5, F6)
  int n_bar = 10;        ///< drift severity divisor (F5, F6)
  /// Keep the printed 0.5 factor on the first m-1 spherical objectives
  /// instead of the standard form. Diagnostic only; reference fronts and
  /// the on-front identities assume the standard form.
  bool table1_verbatim = false;

  static DynamicProblem make(ProblemId id);

  /// Drift time at generation counter tau (counted from run start).
  double drift_time(long tau) const;
  /// Drift target G in [0, 1] (F5, F6).
  double drift_value(long tau) const;
  /// Position bias exponent at tau (F6).
  double position_exponent(long tau) const;

  /// Evaluates x under m objectives at generation tau. Requires
  /// x in [0, 1]^n with length n, and 2 <= m <= n; throws otherwise.
  std::vector<double> evaluate(const std::vector<double>& x, int m,
                               long tau) const;

  /// `count` points sampled from the true Pareto front at (m, tau), via a
  /// seeded uniform simplex sample mapped onto the front shape.
  std::vector<std::vector<double>> sample_pf(int m, long tau, std::size_t count,
                                             std::uint64_t seed) const;

  /// True iff the front depends on tau (through the drift clock).
  bool front_drifts() const { return id == ProblemId::F6; }
};

/// Objective-count trajectory over time steps t = 1..T, plus the
/// generation budget: warmup generations for t = 1, then tau_t
/// generations per later step.
struct ChangeSchedule {
  std::vector<std::pair<int, int>> steps;  ///< (t, m), t consecutive from 1
  int warmup_gens = 300;
  int tau_t = 50;

  /// m = 3,4,5,6,7,6,5,4,3,2 over ten steps.
  static ChangeSchedule ramp(int warmup_gens, int tau_t);
  /// m = 3,5,7,5,3,2 over six steps.
  static ChangeSchedule leap(int warmup_gens, int tau_t);
  /// Explicit m sequence starting at t = 1. Every m must lie in [2, 7].
  static ChangeSchedule custom(const std::vector<int>& ms, int warmup_gens,
                               int tau_t);

  int m_of(int t) const;  ///< throws if t is out of range
  int num_steps() const { return static_cast<int>(steps.size()); }
  long total_generations() const {
    return warmup_gens + static_cast<long>(num_steps() - 1) * tau_t;
  }
};

}  // namespace dmolab
