#include "asym/weighting.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "asym/purity_order.hpp"
#include "oracles.hpp"

using namespace asym;

TEST(Phi, Examples) {
  EXPECT_DOUBLE_EQ(phi(WeightFactor(1.0), 0.37), 0.37);
  EXPECT_NEAR(phi(WeightFactor(2.0), 0.5), 2.0 / 3.0, 1e-15);
  for (double p : oracle::grid(0.0, 1.0, 41)) {
    EXPECT_NEAR(phi(WeightFactor(0.5), phi(WeightFactor(2.0), p)), p, 1e-15);
  }
  EXPECT_EQ(phi(WeightFactor(3.0), 0.0), 0.0);
  EXPECT_EQ(phi(WeightFactor(3.0), 1.0), 1.0);
  EXPECT_THROW(WeightFactor(0.0), std::invalid_argument);
  EXPECT_THROW(WeightFactor(-1.0), std::invalid_argument);
}

TEST(Phi, StrictlyIncreasing) {
  for (double w : {0.1, 0.5, 2.0, 10.0}) {
    const auto pts = oracle::grid(0.0, 1.0, 101);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      EXPECT_LT(phi(WeightFactor(w), pts[i - 1]), phi(WeightFactor(w), pts[i]));
    }
  }
}

TEST(Transform, IdentityAtUnitWeight) {
  const auto t = apply_tw(entropy(), WeightFactor(1.0));
  for (double p : oracle::grid(0.0, 1.0, 101)) EXPECT_NEAR(t(p), oracle::entropy(p), 1e-15);
}

TEST(Transform, MatchesDefinition) {
  for (double w : {0.2, 0.5, 3.0, 7.0}) {
    const auto t = apply_tw(power_minus(3.0), WeightFactor(w));
    for (double p : oracle::grid(0.0, 1.0, 101)) {
      EXPECT_NEAR(t(p), oracle::tw(oracle::cubic, w, p), 1e-14);
    }
  }
}

TEST(Transform, KmSqrtScalesBySqrtW) {
  for (double w : {0.25, 2.0, 9.0}) {
    const auto t = apply_tw(km_sqrt(), WeightFactor(w));
    for (double p : oracle::grid(0.0, 1.0, 101)) {
      EXPECT_NEAR(t(p), std::sqrt(w) * std::sqrt(p * (1 - p)), 1e-14);
    }
  }
}

TEST(Transform, MzrIsScaledTransformedGini) {
  for (double m : {0.2, 0.5, 0.8}) {
    const double w = (1.0 / m - 1.0) * (1.0 / m - 1.0);
    const auto t = apply_tw(gini(), WeightFactor(w));
    const auto h = mzr(m);
    for (double p : oracle::grid(0.0, 1.0, 512)) {
      EXPECT_NEAR(h(p), t(p) / (2.0 * (1.0 - m) * (1.0 - m)), 1e-10);
    }
  }
}

TEST(Transform, DerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  for (const auto& f : {gini(), entropy(), power_minus(3.0), cost_insensitive(0.3), sym_quartic()}) {
    for (double w : {0.2, 0.5, 2.0, 5.0}) {
      const auto t = apply_tw(f, WeightFactor(w));
      for (int i = 0; i < 50; ++i) {
        const double p = unit(rng);
        const double h = 1e-3 * std::min(p, 1.0 - p);
        for (int k = 1; k <= 4; ++k) {
          const oracle::Fn lower = [&](double x) { return k == 1 ? t(x) : t.deriv(k - 1, x); };
          const double fd = oracle::derivative(lower, p, h);
          EXPECT_LE(std::abs(fd - t.deriv(k, p)), 1e-5 * std::max(1.0, std::abs(t.deriv(k, p))))
              << f.spec() << " w=" << w << " k=" << k << " p=" << p;
        }
        // Second derivative straight from the closed-form composition formula.
        const double u = 1.0 + (w - 1.0) * p;
        EXPECT_NEAR(t.deriv(2, p), w * w / (u * u * u) * f.deriv(2, oracle::phi(w, p)),
                    1e-12 * std::max(1.0, std::abs(t.deriv(2, p))));
      }
    }
  }
}

TEST(Transform, GroupLawAndInversion) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> logw(-2.0, 2.0), unit(0.0, 1.0);
  for (const auto& f : {gini(), entropy(), mzr(0.3)}) {
    for (int i = 0; i < 50; ++i) {
      const double w1 = std::exp(logw(rng)), w2 = std::exp(logw(rng));
      const double p = unit(rng);
      const auto composed = apply_tw(apply_tw(f, WeightFactor(w2)), WeightFactor(w1));
      const auto direct = apply_tw(f, WeightFactor(w1 * w2));
      EXPECT_NEAR(composed(p), direct(p), 1e-10);
      const auto inverted = apply_tw(apply_tw(f, WeightFactor(w1)), WeightFactor(1.0 / w1));
      EXPECT_NEAR(inverted(p), f(p), 1e-10);
    }
  }
}

TEST(Transform, PreservesPreimpurity) {
  for (double w : {0.1, 0.5, 4.0}) {
    EXPECT_TRUE(is_preimpurity(apply_tw(entropy(), WeightFactor(w))));
    EXPECT_TRUE(is_preimpurity(apply_tw(sym_quartic(), WeightFactor(w))));
  }
}

// Partial derivatives in w by central differences, per the phi identities.
TEST(PhiIdentities, HoldAtRandomPoints) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> logw(-2.0, 2.0), unit(0.001, 0.999);
  for (int i = 0; i < 2000; ++i) {
    const double w = std::exp(logw(rng));
    const double p = unit(rng);
    const double ph = phi(WeightFactor(w), p);
    const double core = (w - (w - 1.0) * ph) * (w - (w - 1.0) * ph);
    const double hw = 1e-5 * std::max(1.0, w);
    const double u = 1.0 + (w - 1.0) * p;

    const oracle::Fn phi_of_w = [&](double ww) { return oracle::phi(ww, p); };
    const oracle::Fn phi_of_p = [&](double pp) { return oracle::phi(w, pp); };
    const oracle::Fn dphi_dp_of_w = [&](double ww) {
      const double uu = 1.0 + (ww - 1.0) * p;
      return ww / (uu * uu);
    };

    EXPECT_NEAR(1.0 / (u * u), core / (w * w), 1e-8);
    EXPECT_NEAR(oracle::derivative(phi_of_w, w, hw), ph * (1 - ph) / w, 1e-8);
    EXPECT_NEAR(oracle::derivative(phi_of_p, p, 1e-4 * p), core / w, 1e-8 * std::max(1.0, core / w));
    EXPECT_NEAR(oracle::derivative(dphi_dp_of_w, w, hw), (1 - 2 * ph) * core / (w * w), 1e-7);
  }
}

TEST(GProfile, Constants) {
  const auto e = g_profile(entropy());
  const auto g = g_profile(gini());
  ASSERT_EQ(e.p.size(), static_cast<std::size_t>(kDefaultGrid));
  for (std::size_t i = 0; i < e.g.size(); ++i) {
    EXPECT_NEAR(e.g[i], 1.0, 1e-7);
    EXPECT_NEAR(g.g[i], 3.0, 1e-7);
  }
}

TEST(GProfile, SymQuarticAtHalf) {
  const auto prof = g_profile(sym_quartic(), 3);  // grid is {delta, 1/2, 1 - delta}
  EXPECT_NEAR(prof.p[1], 0.5, 1e-15);
  EXPECT_NEAR(prof.h[1], 0.0, 1e-12);
  EXPECT_NEAR(prof.h_prime[1], 16.0, 1e-12);
  EXPECT_NEAR(prof.g[1], -1.0, 1e-12);
}

TEST(GProfile, RejectsNonConcave) {
  EXPECT_THROW(g_profile(quartic_degenerate()), std::domain_error);
  EXPECT_THROW(g_profile(polynomial({0.0, 1.0})), std::domain_error);
}

TEST(RespectsWeighting, Verdicts) {
  const auto cubic = respects_class_weighting(power_minus(3.0));
  EXPECT_TRUE(cubic);
  EXPECT_NEAR(cubic.min_g, 4.0, 1e-7);
  EXPECT_TRUE(respects_class_weighting(gini()));
  const auto quartic = respects_class_weighting(sym_quartic());
  EXPECT_FALSE(quartic);
  EXPECT_NEAR(quartic.argmin_p, 0.5, 1e-3);
  EXPECT_LT(quartic.min_g, 0.0);
}

TEST(CostInsensitive, Verdicts) {
  const auto f = is_cost_insensitive(cost_insensitive(0.3));
  EXPECT_TRUE(f);
  EXPECT_TRUE(f.transform_check);
  EXPECT_TRUE(is_cost_insensitive(km_sqrt()));
  const auto e = is_cost_insensitive(entropy());
  EXPECT_FALSE(e);
  EXPECT_FALSE(e.transform_check);
  EXPECT_NEAR(e.max_abs_g, 1.0, 1e-7);
}

TEST(CostInsensitive, TransformIsPureScaling) {
  for (double alpha : {0.2, 0.5, 0.8}) {
    for (double w : {0.25, 4.0}) {
      const auto map = are_equivalent(cost_insensitive(alpha), apply_tw(cost_insensitive(alpha), WeightFactor(w)));
      ASSERT_TRUE(map);
      EXPECT_NEAR(map->scale, std::pow(w, alpha), 1e-8);
      EXPECT_NEAR(map->slope, 0.0, 1e-8);
      EXPECT_NEAR(map->offset, 0.0, 1e-8);
    }
  }
}

TEST(Transform, PurityOrderPreserved) {
  const auto base = ratio_monotone(power_minus(3.0), gini()).relation;
  ASSERT_EQ(base, PurityRelation::kFMorePositivelyPure);
  for (double w : {0.5, 2.0}) {
    EXPECT_EQ(ratio_monotone(apply_tw(power_minus(3.0), WeightFactor(w)),
                             apply_tw(gini(), WeightFactor(w)))
                  .relation,
              base);
  }
}

TEST(Transform, RespectingFunctionsFormMonotoneFamily) {
  const double ws[] = {0.5, 1.0, 2.0, 5.0};
  for (const auto& f : {gini(), entropy(), power_minus(3.0)}) {
    ASSERT_TRUE(respects_class_weighting(f));
    for (double w1 : ws) {
      for (double w2 : ws) {
        if (w1 >= w2) continue;
        EXPECT_EQ(ratio_monotone(apply_tw(f, WeightFactor(w1)), apply_tw(f, WeightFactor(w2))).relation,
                  PurityRelation::kFMorePositivelyPure)
            << f.spec() << " " << w1 << " " << w2;
      }
    }
  }
}

TEST(Transform, NonRespectingFunctionBreaksMonotoneFamily) {
  EXPECT_NE(ratio_monotone(sym_quartic(), apply_tw(sym_quartic(), WeightFactor(2.0))).relation,
            PurityRelation::kFMorePositivelyPure);
}
