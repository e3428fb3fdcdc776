#include "asym/impurity.hpp"

#include "asym/fn_spec.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace asym {
namespace {

std::string with_params(std::string_view name, std::span<const double> params) {
  std::string out(name);
  for (std::size_t i = 0; i < params.size(); ++i) {
    out += (i == 0) ? ':' : ',';
    out += format_shortest(params[i]);
  }
  return out;
}

class Entropy final : public Curve {
 public:
  double value(double p) const override {
    if (p <= 0.0 || p >= 1.0) return 0.0;  // 0 log 0 = 0
    return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
  }
  double derivative(int order, double p) const override {
    const double q = 1.0 - p;
    switch (order) {
      case 1: return std::log(q / p);
      case 2: return -1.0 / (p * q);
      case 3: return 1.0 / (p * p) - 1.0 / (q * q);
      default: return -2.0 / (p * p * p) - 2.0 / (q * q * q);
    }
  }
  std::string spec() const override { return "entropy"; }
};

class Gini final : public Curve {
 public:
  double value(double p) const override { return 2.0 * p * (1.0 - p); }
  double derivative(int order, double p) const override {
    switch (order) {
      case 1: return 2.0 - 4.0 * p;
      case 2: return -4.0;
      default: return 0.0;
    }
  }
  std::string spec() const override { return "gini"; }
};

// sign * (p^alpha - p); sign = -1 gives p - p^alpha.
class PowerFamily final : public Curve {
 public:
  PowerFamily(double alpha, double sign, std::string name)
      : alpha_(alpha), sign_(sign), name_(std::move(name)) {}

  double value(double p) const override { return sign_ * (std::pow(p, alpha_) - p); }
  double derivative(int order, double p) const override {
    double coeff = 1.0;
    for (int k = 0; k < order; ++k) coeff *= alpha_ - k;
    const double d = coeff * std::pow(p, alpha_ - order);
    return sign_ * (order == 1 ? d - 1.0 : d);
  }
  std::string spec() const override {
    const double params[] = {alpha_};
    return with_params(name_, params);
  }

 private:
  double alpha_;
  double sign_;
  std::string name_;
};

// p(1-p) / (beta p + gamma) with beta = 1 - 2m, gamma = m^2. Derivatives by
// Leibniz over numerator p - p^2 and the reciprocal of the linear denominator.
class Mzr final : public Curve {
 public:
  explicit Mzr(double m) : m_(m), beta_(1.0 - 2.0 * m), gamma_(m * m) {}

  double value(double p) const override { return p * (1.0 - p) / (beta_ * p + gamma_); }
  double derivative(int order, double p) const override {
    const double d = beta_ * p + gamma_;
    // j-th derivative of 1/d: (-1)^j j! beta^j / d^(j+1)
    double recip[5];
    double term = 1.0 / d;
    for (int j = 0; j <= 4; ++j) {
      recip[j] = term;
      term *= -(j + 1) * beta_ / d;
    }
    const double num[3] = {p - p * p, 1.0 - 2.0 * p, -2.0};
    double sum = 0.0;
    double binom = 1.0;  // C(order, j)
    for (int j = 0; j <= order; ++j) {
      const int k = order - j;
      if (k <= 2) sum += binom * num[k] * recip[j];
      binom = binom * (order - j) / (j + 1);
    }
    return sum;
  }
  std::string spec() const override {
    const double params[] = {m_};
    return with_params("mzr", params);
  }

 private:
  double m_;
  double beta_;
  double gamma_;
};

class KmSqrt final : public Curve {
 public:
  double value(double p) const override { return std::sqrt(p * (1.0 - p)); }
  double derivative(int order, double p) const override {
    const double s = p * (1.0 - p);
    const double ds = 1.0 - 2.0 * p;
    const double root = std::sqrt(s);
    switch (order) {
      case 1: return ds / (2.0 * root);
      case 2: return -0.25 / (s * root);
      case 3: return 0.375 * ds / (s * s * root);
      default: return -(15.0 / 16.0) * ds * ds / (s * s * s * root) - 0.75 / (s * s * root);
    }
  }
  std::string spec() const override { return "km-sqrt"; }
};

// p^alpha (1-p)^(1-alpha). With L = log(-f''):
// f'' = -alpha(1-alpha) p^(alpha-2) (1-p)^(-1-alpha), f''' = f'' H, f'''' = f'' (H^2 + H').
class CostInsensitive final : public Curve {
 public:
  explicit CostInsensitive(double alpha) : alpha_(alpha) {}

  double value(double p) const override {
    return std::pow(p, alpha_) * std::pow(1.0 - p, 1.0 - alpha_);
  }
  double derivative(int order, double p) const override {
    const double q = 1.0 - p;
    if (order == 1) return value(p) * (alpha_ / p - (1.0 - alpha_) / q);
    const double second =
        -alpha_ * (1.0 - alpha_) * std::pow(p, alpha_ - 2.0) * std::pow(q, -1.0 - alpha_);
    if (order == 2) return second;
    const double h = (alpha_ - 2.0) / p + (alpha_ + 1.0) / q;
    if (order == 3) return second * h;
    const double dh = -(alpha_ - 2.0) / (p * p) + (alpha_ + 1.0) / (q * q);
    return second * (h * h + dh);
  }
  std::string spec() const override {
    const double params[] = {alpha_};
    return with_params("cost-insensitive", params);
  }

 private:
  double alpha_;
};

class SymQuartic final : public Curve {
 public:
  double value(double p) const override {
    const double x = p - 0.5;
    const double x2 = x * x;
    return 1.0 - 3.0 * x2 - 4.0 * x2 * x2;
  }
  double derivative(int order, double p) const override {
    const double x = p - 0.5;
    switch (order) {
      case 1: return -6.0 * x - 16.0 * x * x * x;
      case 2: return -6.0 - 48.0 * x * x;
      case 3: return -96.0 * x;
      default: return -96.0;
    }
  }
  std::string spec() const override { return "sym-quartic"; }
};

// s^4 with s = p(1-p), kept in factored form so f(1/2) and f(1/3) are exact to rounding.
class QuarticDegenerate final : public Curve {
 public:
  double value(double p) const override {
    const double s = p * (1.0 - p);
    return (s * s) * (s * s);
  }
  double derivative(int order, double p) const override {
    const double s = p * (1.0 - p);
    const double ds = 1.0 - 2.0 * p;
    const double ds2 = ds * ds;
    switch (order) {
      case 1: return 4.0 * s * s * s * ds;
      case 2: return 12.0 * s * s * ds2 - 8.0 * s * s * s;
      case 3: return 24.0 * s * ds2 * ds - 72.0 * s * s * ds;
      default: return 24.0 * ds2 * ds2 - 288.0 * s * ds2 + 144.0 * s * s;
    }
  }
  std::string spec() const override { return "quartic-degenerate"; }
};

class Polynomial final : public Curve {
 public:
  explicit Polynomial(std::vector<double> coeffs) {
    derivs_.push_back(std::move(coeffs));
    for (int k = 1; k <= 4; ++k) {
      const auto& prev = derivs_.back();
      std::vector<double> next;
      for (std::size_t i = 1; i < prev.size(); ++i) next.push_back(prev[i] * static_cast<double>(i));
      derivs_.push_back(std::move(next));
    }
  }

  double value(double p) const override { return horner(derivs_[0], p); }
  double derivative(int order, double p) const override { return horner(derivs_[order], p); }
  std::string spec() const override { return with_params("polynomial", derivs_[0]); }

 private:
  static double horner(const std::vector<double>& c, double p) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * p + *it;
    return acc;
  }

  std::vector<std::vector<double>> derivs_;  // coefficient lists of f, f', ..., f''''
};

class Affine final : public Curve {
 public:
  Affine(std::shared_ptr<const Curve> base, double scale, double slope, double offset)
      : base_(std::move(base)), scale_(scale), slope_(slope), offset_(offset) {}

  double value(double p) const override { return scale_ * base_->value(p) + slope_ * p + offset_; }
  double derivative(int order, double p) const override {
    const double d = scale_ * base_->derivative(order, p);
    return order == 1 ? d + slope_ : d;
  }
  std::string spec() const override {
    return base_->spec() + "/affine:" + format_shortest(scale_) + "," + format_shortest(slope_) +
           "," + format_shortest(offset_);
  }

 private:
  std::shared_ptr<const Curve> base_;
  double scale_;
  double slope_;
  double offset_;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

ImpurityFn entropy() { return {std::make_shared<Entropy>(), "entropy"}; }
ImpurityFn gini() { return {std::make_shared<Gini>(), "gini"}; }

ImpurityFn power_minus(double alpha) {
  require(alpha > 1.0, "power-minus requires alpha > 1");
  return {std::make_shared<PowerFamily>(alpha, -1.0, "power-minus"), "power-minus", {alpha}};
}

ImpurityFn power_plus(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "power-plus requires 0 < alpha < 1");
  return {std::make_shared<PowerFamily>(alpha, 1.0, "power-plus"), "power-plus", {alpha}};
}

ImpurityFn mzr(double m) {
  require(m > 0.0 && m < 1.0, "mzr requires 0 < m < 1");
  return {std::make_shared<Mzr>(m), "mzr", {m}};
}

ImpurityFn km_sqrt() { return {std::make_shared<KmSqrt>(), "km-sqrt"}; }

ImpurityFn cost_insensitive(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "cost-insensitive requires 0 < alpha < 1");
  return {std::make_shared<CostInsensitive>(alpha), "cost-insensitive", {alpha}};
}

ImpurityFn sym_quartic() { return {std::make_shared<SymQuartic>(), "sym-quartic"}; }

ImpurityFn quartic_degenerate() {
  return {std::make_shared<QuarticDegenerate>(), "quartic-degenerate"};
}

ImpurityFn polynomial(std::vector<double> coeffs) {
  require(!coeffs.empty(), "polynomial requires at least one coefficient");
  for (double c : coeffs) require(std::isfinite(c), "polynomial coefficients must be finite");
  auto params = coeffs;
  return {std::make_shared<Polynomial>(std::move(coeffs)), "polynomial", std::move(params)};
}

ImpurityFn affine(const ImpurityFn& f, double scale, double slope, double offset) {
  require(scale > 0.0, "affine scale must be positive");
  return {std::make_shared<Affine>(f.curve(), scale, slope, offset), "affine",
          {scale, slope, offset}};
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"entropy", "-p log p - (1-p) log(1-p)", "none", 0, {}},
      {"gini", "2p(1-p)", "none", 0, {}},
      {"power-minus", "p - p^alpha", "alpha > 1", 1, {3.0}},
      {"power-plus", "p^alpha - p", "0 < alpha < 1", 1, {0.5}},
      {"mzr", "p(1-p) / ((1-2m)p + m^2)", "0 < m < 1", 1, {0.3}},
      {"km-sqrt", "sqrt(p(1-p))", "none", 0, {}},
      {"cost-insensitive", "p^alpha (1-p)^(1-alpha)", "0 < alpha < 1", 1, {0.3}},
      {"sym-quartic", "1 - 3(p-1/2)^2 - 4(p-1/2)^4", "none", 0, {}},
      {"quartic-degenerate", "p^4 (1-p)^4", "none", 0, {}},
      {"polynomial", "sum c_i p^i", "one or more finite coefficients, ascending", -1,
       {0.0, 1.0, 0.0, -1.0}},
  };
  return entries;
}

ImpurityFn catalog_lookup(std::string_view name, std::span<const double> params) {
  const CatalogEntry* entry = nullptr;
  for (const auto& e : catalog_entries()) {
    if (e.name == name) entry = &e;
  }
  if (entry == nullptr) throw std::invalid_argument("unknown impurity function: " + std::string(name));
  if (entry->arity >= 0 && params.size() != static_cast<std::size_t>(entry->arity)) {
    throw std::invalid_argument(std::string(name) + " expects " + std::to_string(entry->arity) +
                                " parameter(s), got " + std::to_string(params.size()));
  }

  if (name == "entropy") return entropy();
  if (name == "gini") return gini();
  if (name == "power-minus") return power_minus(params[0]);
  if (name == "power-plus") return power_plus(params[0]);
  if (name == "mzr") return mzr(params[0]);
  if (name == "km-sqrt") return km_sqrt();
  if (name == "cost-insensitive") return cost_insensitive(params[0]);
  if (name == "sym-quartic") return sym_quartic();
  if (name == "quartic-degenerate") return quartic_degenerate();
  return polynomial({params.begin(), params.end()});
}

}  // namespace asym
