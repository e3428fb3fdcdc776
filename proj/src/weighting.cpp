#include "asym/weighting.hpp"

#include <cmath>
#include <stdexcept>

#include "asym/fn_spec.hpp"

namespace asym {
namespace {

class Transformed final : public Curve {
 public:
  Transformed(std::shared_ptr<const Curve> base, double w) : base_(std::move(base)), w_(w) {}

  double value(double p) const override {
    const double u = 1.0 + (w_ - 1.0) * p;
    return u * base_->value(w_ * p / u);
  }

  double derivative(int order, double p) const override {
    const double w = w_;
    const double wm1 = w - 1.0;
    const double u = 1.0 + wm1 * p;
    const double x = w * p / u;
    switch (order) {
      case 1:
        return wm1 * base_->value(x) + (w / u) * base_->derivative(1, x);
      case 2:
        return w * w / (u * u * u) * base_->derivative(2, x);
      case 3: {
        const double u4 = u * u * u * u;
        return w * w *
               (-3.0 * wm1 / u4 * base_->derivative(2, x) + w / (u4 * u) * base_->derivative(3, x));
      }
      default: {
        const double u5 = u * u * u * u * u;
        return w * w *
               (12.0 * wm1 * wm1 / u5 * base_->derivative(2, x) -
                8.0 * w * wm1 / (u5 * u) * base_->derivative(3, x) +
                w * w / (u5 * u * u) * base_->derivative(4, x));
      }
    }
  }

  std::string spec() const override { return base_->spec() + "/tw:" + format_shortest(w_); }

 private:
  std::shared_ptr<const Curve> base_;
  double w_;
};

}  // namespace

WeightFactor::WeightFactor(double w) : w_(w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weight factor must be > 0");
}

double phi(WeightFactor w, double p) {
  const double wv = w.value();
  return wv * p / (1.0 + (wv - 1.0) * p);
}

ImpurityFn apply_tw(const ImpurityFn& f, WeightFactor w) {
  return {std::make_shared<Transformed>(f.curve(), w.value()), "tw", {w.value()}};
}

GProfile g_profile(const ImpurityFn& f, int grid) {
  GProfile out;
  out.p = interior_grid(grid);
  out.g.reserve(out.p.size());
  out.h.reserve(out.p.size());
  out.h_prime.reserve(out.p.size());
  for (double p : out.p) {
    const double d2 = f.deriv(2, p);
    if (!(d2 < 0.0)) {
      throw std::domain_error("g_profile: f'' = " + format_g17(d2) + " at p = " + format_g17(p) +
                              " (not strictly concave)");
    }
    const double d3 = f.deriv(3, p);
    const double d4 = f.deriv(4, p);
    const double h = d3 / d2;
    const double h_prime = (d4 * d2 - d3 * d3) / (d2 * d2);
    out.h.push_back(h);
    out.h_prime.push_back(h_prime);
    out.g.push_back(p * (p - 1.0) * h_prime + (2.0 * p - 1.0) * h + 3.0);
  }
  return out;
}

WeightingVerdict respects_class_weighting(const ImpurityFn& f, int grid, double tol) {
  const auto profile = g_profile(f, grid);
  WeightingVerdict verdict;
  verdict.min_g = profile.g.front();
  verdict.argmin_p = profile.p.front();
  for (std::size_t i = 1; i < profile.g.size(); ++i) {
    if (profile.g[i] < verdict.min_g) {
      verdict.min_g = profile.g[i];
      verdict.argmin_p = profile.p[i];
    }
  }
  verdict.respects = verdict.min_g >= -tol;
  return verdict;
}

CostInsensitivity is_cost_insensitive(const ImpurityFn& f, int grid, double tol) {
  const auto profile = g_profile(f, grid);
  CostInsensitivity out;
  for (std::size_t i = 0; i < profile.g.size(); ++i) {
    if (std::abs(profile.g[i]) > out.max_abs_g) {
      out.max_abs_g = std::abs(profile.g[i]);
      out.worst_p = profile.p[i];
    }
  }
  out.insensitive = out.max_abs_g <= tol;

  out.transform_check = true;
  for (double w : kInsensitivityProbeWeights) {
    if (!are_equivalent(f, apply_tw(f, WeightFactor(w)), 1e-8, grid)) {
      out.transform_check = false;
      break;
    }
  }
  return out;
}

}  // namespace asym
