#ifndef ASYM_IMPURITY_HPP
#define ASYM_IMPURITY_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asym {

/// Interior margin for derivative evaluation; grids live on [kDelta, 1 - kDelta].
inline constexpr double kDelta = 1e-6;

/// Default number of grid points used by axiom and ratio checks.
inline constexpr int kDefaultGrid = 2001;

/// A real function on [0,1] with closed-form derivatives of order 1..4 on (0,1).
///
/// Implementations must be immutable; ImpurityFn shares them between copies
/// and across threads.
class Curve {
 public:
  virtual ~Curve() = default;

  virtual double value(double p) const = 0;
  virtual double derivative(int order, double p) const = 0;

  /// Spec string that reconstructs this curve through parse_fn_spec().
  virtual std::string spec() const = 0;
};

/// Value handle over a shared immutable Curve, with family name and parameters.
class ImpurityFn {
 public:
  ImpurityFn(std::shared_ptr<const Curve> curve, std::string name,
             std::vector<double> params = {});

  const std::string& name() const noexcept { return name_; }
  const std::vector<double>& params() const noexcept { return params_; }
  std::string spec() const { return curve_->spec(); }

  /// f(p) for p in [0,1]. Throws std::domain_error outside.
  double value(double p) const;
  double operator()(double p) const { return value(p); }

  /// f^(order)(p), order in {1,2,3,4}, p in (0,1).
  double deriv(int order, double p) const;

  double at_zero() const { return curve_->value(0.0); }
  double at_one() const { return curve_->value(1.0); }

  const std::shared_ptr<const Curve>& curve() const noexcept { return curve_; }

 private:
  std::shared_ptr<const Curve> curve_;
  std::string name_;
  std::vector<double> params_;
};

// Catalog ---------------------------------------------------------------------

ImpurityFn entropy();
ImpurityFn gini();
/// p - p^alpha, alpha > 1.
ImpurityFn power_minus(double alpha);
/// p^alpha - p, 0 < alpha < 1.
ImpurityFn power_plus(double alpha);
/// p(1-p) / ((1-2m)p + m^2), 0 < m < 1; maximized at p = m.
ImpurityFn mzr(double m);
/// sqrt(p(1-p)).
ImpurityFn km_sqrt();
/// p^alpha (1-p)^(1-alpha), 0 < alpha < 1.
ImpurityFn cost_insensitive(double alpha);
/// 1 - 3(p-1/2)^2 - 4(p-1/2)^4.
ImpurityFn sym_quartic();
/// p^4 (1-p)^4. Not concave.
ImpurityFn quartic_degenerate();
/// sum_i coeffs[i] p^i (ascending order).
ImpurityFn polynomial(std::vector<double> coeffs);

/// A*f(p) + B*p + C.
ImpurityFn affine(const ImpurityFn& f, double scale, double slope, double offset);

struct CatalogEntry {
  std::string name;
  std::string formula;
  std::string param_range;
  int arity;  ///< -1 for variadic (polynomial)
  std::vector<double> example_params;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Builds a catalog function. Throws std::invalid_argument on unknown name,
/// wrong arity or parameters outside the family's range.
ImpurityFn catalog_lookup(std::string_view name, std::span<const double> params);

// Axioms ----------------------------------------------------------------------

/// n uniform points on [kDelta, 1 - kDelta], n >= 3.
std::vector<double> interior_grid(int n = kDefaultGrid);

struct AxiomCheck {
  bool ok = true;
  std::optional<double> first_violation;  ///< first grid p that failed
  std::string diagnostic;

  explicit operator bool() const noexcept { return ok; }
};

/// Finite endpoints and f'' < 0 at every interior grid point.
AxiomCheck is_preimpurity(const ImpurityFn& f, int grid = kDefaultGrid);

/// f'' <= 0 on the interior grid (concave, possibly not strictly).
bool is_proper(const ImpurityFn& f, int grid = kDefaultGrid);

/// f(p) + (f(0) - f(1)) p - f(0): the representative vanishing at both endpoints.
/// Throws std::invalid_argument if f is not a preimpurity function.
ImpurityFn standard_form(const ImpurityFn& f);

/// second(p) = scale * first(p) + slope * p + offset, scale > 0.
struct AffineNormalization {
  double scale = 1.0;
  double slope = 0.0;
  double offset = 0.0;
};

/// Returns the affine map taking f to g when g''/f'' is a positive constant on
/// the grid (max - min <= tol * (1 + max|ratio|)) and the map reproduces g
/// pointwise; absent otherwise.
std::optional<AffineNormalization> are_equivalent(const ImpurityFn& f,
                                                  const ImpurityFn& g,
                                                  double tol = 1e-9,
                                                  int grid = kDefaultGrid);

/// Argmax of a strictly concave f on [0,1] by golden-section search.
/// Throws std::invalid_argument when f fails is_preimpurity.
double maximizer(const ImpurityFn& f, double tol = 1e-10);

}  // namespace asym

#endif  // ASYM_IMPURITY_HPP
