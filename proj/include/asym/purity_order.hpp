#ifndef ASYM_PURITY_ORDER_HPP
#define ASYM_PURITY_ORDER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asym/impurity.hpp"
#include "asym/split.hpp"

namespace asym {

enum class PurityRelation {
  kFMorePositivelyPure,  ///< f''/g'' nondecreasing; equivalently g more negatively pure
  kGMorePositivelyPure,  ///< f''/g'' nonincreasing
  kEquivalent,           ///< f''/g'' constant
  kNeither,
};

std::string to_string(PurityRelation r);

/// Monotonicity evidence for r = f''/g'' on a grid.
struct RatioEvidence {
  std::vector<double> p;
  std::vector<double> ratio;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::size_t increasing_steps = 0;  ///< r[i+1] > r[i] beyond the band
  std::size_t decreasing_steps = 0;  ///< r[i+1] < r[i] beyond the band
  std::optional<std::size_t> first_increase;
  std::optional<std::size_t> first_decrease;
  bool strict = false;  ///< every step moved beyond the band in the verdict's direction
};

struct PurityVerdict {
  PurityRelation relation = PurityRelation::kNeither;
  RatioEvidence evidence;
};

inline constexpr double kDefaultRatioTol = 1e-9;

/// Classifies r = f''/g''. Adjacent steps within tol * (1 + |r|) count as flat.
/// Throws std::domain_error if either function is not strictly concave on the grid.
PurityVerdict ratio_monotone(const ImpurityFn& f, const ImpurityFn& g, int grid = kDefaultGrid,
                             double tol = kDefaultRatioTol);

/// One sampled node with a two-element candidate set.
struct PurityInstance {
  double c = 0.0;
  std::array<SplitPoint, 2> splits{};
};

struct EmpiricalReport {
  bool passed = true;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::optional<std::size_t> failing_trial;
  std::optional<PurityInstance> counterexample;
  SplitPoint chosen_by_f{};
  SplitPoint chosen_by_g{};

  explicit operator bool() const noexcept { return passed; }
};

/// Deterministic per-trial sampler: c ~ U(0,1), a_i ~ U[0,c), b_i ~ U(c,1].
PurityInstance sample_instance(std::uint64_t seed, std::size_t trial);

/// Checks the claim "f splits more positively purely than g": on every trial the
/// max-b optimum under f has b at least that under g. Reports the lowest failing trial.
EmpiricalReport empirical_purity_check(const ImpurityFn& f, const ImpurityFn& g,
                                       std::size_t trials, std::uint64_t seed);

/// Checks the claim "g splits more negatively purely than f": the min-a optimum
/// under g has a at most that under f.
EmpiricalReport empirical_negative_purity_check(const ImpurityFn& g, const ImpurityFn& f,
                                                std::size_t trials, std::uint64_t seed);

/// Instance where f picks the split with the smaller right prevalence and g the larger.
struct Witness {
  double c = 0.0;
  std::array<SplitPoint, 2> splits{};  ///< {(a1,b1), (a2,b2)} with a1 < a2 < c < b1 < b2
  double lower = 0.0;  ///< g-side bound on c
  double upper = 0.0;  ///< f-side bound on c
};

/// Constructs a verified counterexample to "f splits more positively purely than g"
/// from a stretch where f''/g'' strictly decreases; absent when none exists on the grid.
std::optional<Witness> find_witness(const ImpurityFn& f, const ImpurityFn& g,
                                    int grid = kDefaultGrid, double tol = kDefaultRatioTol);

/// One weighted point of the realized dataset; quadrants are numbered
/// counter-clockwise from (+,+).
struct QuadrantPoint {
  int quadrant = 1;
  int label = 0;
  double weight = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct RealizedDataset {
  std::array<QuadrantPoint, 8> points{};
};

struct HalfPlanePrevalences {
  double total = 0.0;
  double left = 0.0;   ///< x < 0
  double right = 0.0;  ///< x > 0
  double upper = 0.0;  ///< y > 0
  double lower = 0.0;  ///< y < 0
};

/// Eight weighted points (one per class per quadrant) such that the whole set has
/// prevalence c, the vertical split realizes s1 and the horizontal split realizes s2.
/// Throws std::invalid_argument unless c in (0,1) and both splits are valid for c.
RealizedDataset realize_splits(double c, const SplitPoint& s1, const SplitPoint& s2);

HalfPlanePrevalences measure_prevalences(const RealizedDataset& data);

struct MaximizerOrder {
  bool passed = false;
  double maximizer_f = 0.0;
  double maximizer_g = 0.0;

  explicit operator bool() const noexcept { return passed; }
};

/// For impurity functions with f more positively pure than g, asserts
/// maximizer(f) >= maximizer(g) - tol. Throws std::invalid_argument when either
/// function does not vanish at the endpoints or the ratio verdict is not f-more-positive.
MaximizerOrder maximizer_order_check(const ImpurityFn& f, const ImpurityFn& g,
                                     double tol = 1e-7);

}  // namespace asym

#endif  // ASYM_PURITY_ORDER_HPP
