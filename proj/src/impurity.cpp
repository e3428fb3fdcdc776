#include "asym/impurity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asym {

ImpurityFn::ImpurityFn(std::shared_ptr<const Curve> curve, std::string name,
                       std::vector<double> params)
    : curve_(std::move(curve)), name_(std::move(name)), params_(std::move(params)) {
  if (!curve_) throw std::invalid_argument("ImpurityFn requires a curve");
}

double ImpurityFn::value(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("value-at requires p in [0,1]");
  return curve_->value(p);
}

double ImpurityFn::deriv(int order, double p) const {
  if (order < 1 || order > 4) throw std::invalid_argument("derivative order must be 1..4");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("derivatives require p in (0,1)");
  return curve_->derivative(order, p);
}

std::vector<double> interior_grid(int n) {
  if (n < 3) throw std::invalid_argument("grid needs at least 3 points");
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double step = (1.0 - 2.0 * kDelta) / (n - 1);
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = kDelta + step * i;
  grid.back() = 1.0 - kDelta;
  return grid;
}

AxiomCheck is_preimpurity(const ImpurityFn& f, int grid) {
  AxiomCheck check;
  if (!std::isfinite(f.at_zero()) || !std::isfinite(f.at_one())) {
    check.ok = false;
    check.diagnostic = "non-finite endpoint value";
    return check;
  }
  for (double p : interior_grid(grid)) {
    const double second = f.deriv(2, p);
    if (!(second < 0.0)) {
      check.ok = false;
      check.first_violation = p;
      check.diagnostic = "f'' = " + std::to_string(second) + " is not negative";
      return check;
    }
  }
  return check;
}

bool is_proper(const ImpurityFn& f, int grid) {
  for (double p : interior_grid(grid)) {
    if (!(f.deriv(2, p) <= 0.0)) return false;
  }
  return true;
}

ImpurityFn standard_form(const ImpurityFn& f) {
  if (auto check = is_preimpurity(f); !check) {
    throw std::invalid_argument("standard_form: " + f.spec() + " is not a preimpurity function (" +
                                check.diagnostic + ")");
  }
  const double f0 = f.at_zero();
  const double f1 = f.at_one();
  return affine(f, 1.0, f0 - f1, -f0);
}

std::optional<AffineNormalization> are_equivalent(const ImpurityFn& f, const ImpurityFn& g,
                                                  double tol, int grid) {
  const auto points = interior_grid(grid);
  std::vector<double> ratio;
  ratio.reserve(points.size());
  for (double p : points) {
    const double r = g.deriv(2, p) / f.deriv(2, p);
    if (!std::isfinite(r)) return std::nullopt;
    ratio.push_back(r);
  }
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  const double max_abs = std::max(std::abs(*lo), std::abs(*hi));
  if (*hi - *lo > tol * (1.0 + max_abs)) return std::nullopt;

  AffineNormalization map;
  map.scale = 0.5 * (*lo + *hi);
  if (!(map.scale > 0.0)) return std::nullopt;
  map.offset = g.at_zero() - map.scale * f.at_zero();
  map.slope = g.at_one() - map.scale * f.at_one() - map.offset;

  for (double p : points) {
    const double expected = g.value(p);
    const double mapped = map.scale * f.value(p) + map.slope * p + map.offset;
    if (std::abs(expected - mapped) > tol * (1.0 + std::abs(expected))) return std::nullopt;
  }
  return map;
}

double maximizer(const ImpurityFn& f, double tol) {
  if (auto check = is_preimpurity(f); !check) {
    throw std::invalid_argument("maximizer: " + f.spec() + " is not strictly concave (" +
                                check.diagnostic + ")");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f.value(x1);
  double f2 = f.value(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f.value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f.value(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace asym
