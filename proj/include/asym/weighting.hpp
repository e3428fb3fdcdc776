#ifndef ASYM_WEIGHTING_HPP
#define ASYM_WEIGHTING_HPP

#include <vector>

#include "asym/impurity.hpp"

namespace asym {

/// Multiplier applied to every Class-1 weight.
class WeightFactor {
 public:
  /// Throws std::invalid_argument unless w > 0 and finite.
  explicit WeightFactor(double w);
  double value() const noexcept { return w_; }

 private:
  double w_;
};

/// Prevalence after scaling Class-1 weight by w: wp / (1 + (w-1)p).
double phi(WeightFactor w, double p);

/// (T_w f)(p) = (1 + (w-1)p) f(phi_w(p)), with closed-form derivatives through phi_w.
/// Splitting raw data with T_w f picks the same splits as splitting w-weighted data with f.
ImpurityFn apply_tw(const ImpurityFn& f, WeightFactor w);

/// G(p) = p(p-1)H'(p) + (2p-1)H(p) + 3 with H = f'''/f'' on an interior grid.
struct GProfile {
  std::vector<double> p;
  std::vector<double> g;
  std::vector<double> h;
  std::vector<double> h_prime;
};

/// Throws std::domain_error if f'' is not strictly negative at a grid point.
GProfile g_profile(const ImpurityFn& f, int grid = kDefaultGrid);

inline constexpr double kDefaultGTol = 1e-7;

struct WeightingVerdict {
  bool respects = false;
  double min_g = 0.0;
  double argmin_p = 0.0;

  explicit operator bool() const noexcept { return respects; }
};

/// Heavier Class-1 weighting never makes splits more positively pure iff G >= 0.
WeightingVerdict respects_class_weighting(const ImpurityFn& f, int grid = kDefaultGrid,
                                          double tol = kDefaultGTol);

struct CostInsensitivity {
  bool insensitive = false;  ///< |G| <= tol on the whole grid
  double max_abs_g = 0.0;
  double worst_p = 0.0;
  bool transform_check = false;  ///< f equivalent to T_w f for every probe weight

  explicit operator bool() const noexcept { return insensitive; }
};

/// Weights probed by the equivalence cross-check.
inline constexpr double kInsensitivityProbeWeights[] = {0.25, 0.5, 2.0, 4.0};

CostInsensitivity is_cost_insensitive(const ImpurityFn& f, int grid = kDefaultGrid,
                                      double tol = kDefaultGTol);

}  // namespace asym

#endif  // ASYM_WEIGHTING_HPP
