#include "asym/impurity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace asym;

namespace {

std::vector<ImpurityFn> catalog_sample() {
  return {entropy(),        gini(),     power_minus(3.0),      power_minus(1.5),
          power_plus(0.3),  mzr(0.3),   mzr(0.5),              mzr(0.8),
          km_sqrt(),        cost_insensitive(0.2), cost_insensitive(0.8), sym_quartic(),
          quartic_degenerate(), polynomial({0.0, 1.0, 0.0, -1.0})};
}

}  // namespace

TEST(Catalog, GiniAtHalf) { EXPECT_DOUBLE_EQ(gini()(0.5), 0.5); }

TEST(Catalog, MzrHalfIsTwiceGini) {
  const auto h = mzr(0.5);
  for (double p : oracle::grid(0.0, 1.0, 101)) EXPECT_NEAR(h(p), 4.0 * p * (1.0 - p), 1e-15);
}

TEST(Catalog, PowerMinusWorkedValue) { EXPECT_NEAR(power_minus(3.0)(0.6), 0.384, 1e-15); }

TEST(Catalog, MzrMatchesDefiningFormula) {
  for (double m : {0.1, 0.3, 0.7, 0.95}) {
    const auto h = mzr(m);
    for (double p : oracle::grid(0.0, 1.0, 65)) EXPECT_NEAR(h(p), oracle::h_m(m, p), 1e-14);
  }
}

TEST(Catalog, EndpointConventions) {
  EXPECT_EQ(entropy()(0.0), 0.0);
  EXPECT_EQ(entropy()(1.0), 0.0);
  EXPECT_EQ(km_sqrt()(1.0), 0.0);
  EXPECT_EQ(cost_insensitive(0.3)(0.0), 0.0);
  EXPECT_DOUBLE_EQ(sym_quartic()(0.0), 0.0);
}

TEST(Catalog, LookupByNameAndErrors) {
  const double m[] = {0.3};
  EXPECT_EQ(catalog_lookup("mzr", m).name(), "mzr");
  EXPECT_THROW(catalog_lookup("misclassification", {}), std::invalid_argument);
  const double bad_m[] = {1.2};
  EXPECT_THROW(catalog_lookup("mzr", bad_m), std::invalid_argument);
  const double bad_alpha[] = {0.5};
  EXPECT_THROW(catalog_lookup("power-minus", bad_alpha), std::invalid_argument);
  EXPECT_THROW(catalog_lookup("gini", m), std::invalid_argument);
  EXPECT_THROW(polynomial({}), std::invalid_argument);
}

TEST(Catalog, DomainChecks) {
  EXPECT_THROW(gini()(1.5), std::domain_error);
  EXPECT_THROW(gini().deriv(2, 0.0), std::domain_error);
  EXPECT_THROW(gini().deriv(5, 0.5), std::invalid_argument);
}

TEST(Catalog, ValuesApproachEndpointsContinuously) {
  for (const auto& f : catalog_sample()) {
    double prev_lo = INFINITY, prev_hi = INFINITY;
    for (int k = 2; k <= 12; ++k) {
      const double eps = std::pow(10.0, -k);
      ASSERT_TRUE(std::isfinite(f(eps)));
      const double lo = std::abs(f(eps) - f.at_zero());
      const double hi = std::abs(f(1.0 - eps) - f.at_one());
      EXPECT_LE(lo, prev_lo * (1.0 + 1e-9)) << f.spec();
      EXPECT_LE(hi, prev_hi * (1.0 + 1e-9)) << f.spec();
      prev_lo = lo;
      prev_hi = hi;
    }
    EXPECT_LT(prev_lo, 1e-2) << f.spec();
    EXPECT_LT(prev_hi, 1e-2) << f.spec();
  }
}

// Each closed-form derivative against Richardson differences of the order below.
TEST(Catalog, DerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  for (const auto& f : catalog_sample()) {
    for (int i = 0; i < 100; ++i) {
      const double p = unit(rng);
      const double h = 1e-3 * std::min(p, 1.0 - p);
      for (int k = 1; k <= 4; ++k) {
        const oracle::Fn lower = [&](double x) { return k == 1 ? f(x) : f.deriv(k - 1, x); };
        const double fd = oracle::derivative(lower, p, h);
        const double exact = f.deriv(k, p);
        EXPECT_LE(std::abs(fd - exact), 1e-5 * std::max(1.0, std::abs(exact)))
            << f.spec() << " order " << k << " p=" << p;
      }
    }
  }
}

TEST(Axioms, Preimpurity) {
  EXPECT_TRUE(is_preimpurity(gini()));
  EXPECT_TRUE(is_preimpurity(km_sqrt()));
  EXPECT_TRUE(is_preimpurity(entropy()));
  const auto q = is_preimpurity(quartic_degenerate());
  EXPECT_FALSE(q);
  ASSERT_TRUE(q.first_violation.has_value());
  EXPECT_LT(*q.first_violation, 0.5);
  EXPECT_FALSE(is_preimpurity(polynomial({0.0, 1.0})));
  EXPECT_THROW(is_preimpurity(gini(), 2), std::invalid_argument);
}

TEST(Axioms, Proper) {
  EXPECT_TRUE(is_proper(entropy()));
  EXPECT_FALSE(is_proper(quartic_degenerate()));
  EXPECT_TRUE(is_proper(polynomial({0.0, 1.0})));
  EXPECT_FALSE(is_proper(polynomial({0.0, 0.0, 1.0})));
}

TEST(StandardForm, Examples) {
  const auto g = standard_form(gini());
  const auto shifted = standard_form(polynomial({7.0, 5.0, -2.0}));  // 2p(1-p) + 3p + 7
  const auto k = standard_form(km_sqrt());
  for (double p : oracle::grid(0.0, 1.0, 101)) {
    EXPECT_NEAR(g(p), oracle::gini(p), 1e-15);
    EXPECT_NEAR(shifted(p), oracle::gini(p), 1e-14);
    EXPECT_NEAR(k(p), std::sqrt(p * (1 - p)), 1e-15);
  }
  EXPECT_THROW(standard_form(quartic_degenerate()), std::invalid_argument);
}

TEST(StandardForm, IdempotentAndVanishing) {
  for (const auto& f : catalog_sample()) {
    if (!is_preimpurity(f)) continue;
    const auto once = standard_form(affine(f, 1.7, -0.4, 2.5));
    const auto twice = standard_form(once);
    EXPECT_NEAR(once.at_zero(), 0.0, 1e-12);
    EXPECT_NEAR(once.at_one(), 0.0, 1e-12);
    for (double p : oracle::grid(0.0, 1.0, 201)) EXPECT_NEAR(once(p), twice(p), 1e-12);
    for (double p : {0.1, 0.4, 0.9}) EXPECT_NEAR(once.deriv(2, p), 1.7 * f.deriv(2, p), 1e-9);
  }
}

TEST(Equivalence, Examples) {
  // second = scale * first + slope * p + offset
  const auto doubled = affine(gini(), 2.0, 0.0, 0.0);
  const auto map = are_equivalent(gini(), doubled);
  ASSERT_TRUE(map);
  EXPECT_NEAR(map->scale, 2.0, 1e-12);
  EXPECT_NEAR(map->slope, 0.0, 1e-12);
  EXPECT_NEAR(map->offset, 0.0, 1e-12);

  const auto back = are_equivalent(doubled, gini());
  ASSERT_TRUE(back);
  EXPECT_NEAR(back->scale, 0.5, 1e-12);

  EXPECT_FALSE(are_equivalent(entropy(), gini()));
  EXPECT_FALSE(are_equivalent(power_minus(3.0), gini()));
}

TEST(Equivalence, RecoversRandomAffineMaps) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(1e-3, 10.0), shift(-10.0, 10.0);
  for (const auto& f : catalog_sample()) {
    if (!is_preimpurity(f)) continue;
    for (int i = 0; i < 10; ++i) {
      const double A = scale(rng), B = shift(rng), C = shift(rng);
      const auto map = are_equivalent(f, affine(f, A, B, C));
      ASSERT_TRUE(map) << f.spec();
      EXPECT_NEAR(map->scale, A, 1e-8);
      EXPECT_NEAR(map->slope, B, 1e-8);
      EXPECT_NEAR(map->offset, C, 1e-8);
    }
  }
}

TEST(Equivalence, IsAnEquivalenceRelation) {
  const std::vector<ImpurityFn> pool = {gini(), affine(gini(), 3.0, -1.0, 0.5), entropy(),
                                        affine(entropy(), 0.2, 4.0, -2.0), mzr(0.3),
                                        affine(mzr(0.3), 1.5, 0.0, 1.0), km_sqrt()};
  const auto eq = [](const ImpurityFn& a, const ImpurityFn& b) {
    return are_equivalent(a, b, 1e-9).has_value();
  };
  for (const auto& a : pool) {
    EXPECT_TRUE(eq(a, a)) << a.spec();
    for (const auto& b : pool) {
      EXPECT_EQ(eq(a, b), eq(b, a)) << a.spec() << " " << b.spec();
      for (const auto& c : pool) {
        if (eq(a, b) && eq(b, c)) {
          EXPECT_TRUE(eq(a, c));
        }
      }
    }
  }
  EXPECT_TRUE(eq(pool[0], pool[1]));
  EXPECT_FALSE(eq(pool[0], pool[2]));
}

TEST(Maximizer, Examples) {
  EXPECT_NEAR(maximizer(gini()), 0.5, 1e-7);
  EXPECT_NEAR(maximizer(mzr(0.3)), 0.3, 1e-7);
  EXPECT_NEAR(maximizer(power_minus(3.0)), 1.0 / std::sqrt(3.0), 1e-7);
  EXPECT_NEAR(maximizer(entropy()), 0.5, 1e-7);
  EXPECT_THROW(maximizer(quartic_degenerate()), std::invalid_argument);
}

TEST(Maximizer, AffineTermsMoveTheArgmax) {
  // p - p^3 is a standard form already; adding a slope shifts its maximizer.
  const auto tilted = affine(power_minus(3.0), 1.0, 0.5, 0.0);
  EXPECT_GT(maximizer(tilted), maximizer(power_minus(3.0)) + 0.05);
}
