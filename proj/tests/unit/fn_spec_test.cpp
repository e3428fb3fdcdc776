#include "asym/fn_spec.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "asym/weighting.hpp"
#include "oracles.hpp"

using namespace asym;

TEST(Format, ShortestRoundTrips) {
  EXPECT_EQ(format_shortest(0.3), "0.3");
  EXPECT_EQ(format_shortest(2.0), "2");
  EXPECT_EQ(format_shortest(-1.5e-7), "-1.5e-07");
  const double tricky = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_shortest(tricky)), tricky);
  EXPECT_EQ(format_g17(0.5), "0.5");
  EXPECT_EQ(format_g17(0.1), "0.10000000000000001");
}

TEST(ParseReals, ValidAndInvalid) {
  EXPECT_EQ(parse_real_list("0,1,0,-1"), (std::vector<double>{0, 1, 0, -1}));
  EXPECT_EQ(parse_real_list("2.5e-1"), (std::vector<double>{0.25}));
  EXPECT_TRUE(parse_real_list("").empty());
  EXPECT_THROW(parse_real_list("1,,2"), std::invalid_argument);
  EXPECT_THROW(parse_real_list("1,x"), std::invalid_argument);
  EXPECT_THROW(parse_real_list("1,2,"), std::invalid_argument);
  EXPECT_THROW(parse_real_list("nan"), std::invalid_argument);
  EXPECT_THROW(parse_real_list("inf"), std::invalid_argument);
}

TEST(ParseSpec, BaseFunctions) {
  EXPECT_NEAR(parse_fn_spec("gini")(0.3), oracle::gini(0.3), 1e-15);
  EXPECT_NEAR(parse_fn_spec("mzr:0.3")(0.6), oracle::h_m(0.3, 0.6), 1e-15);
  EXPECT_NEAR(parse_fn_spec("power-minus:3")(0.6), 0.384, 1e-15);
  EXPECT_NEAR(parse_fn_spec("polynomial:0,1,0,-1")(0.6), 0.384, 1e-15);
}

TEST(ParseSpec, Stages) {
  const auto t = parse_fn_spec("gini/tw:2");
  EXPECT_NEAR(t(0.4), oracle::tw(oracle::gini, 2.0, 0.4), 1e-15);
  const auto a = parse_fn_spec("entropy/affine:2,1,-1");
  EXPECT_NEAR(a(0.3), 2.0 * oracle::entropy(0.3) + 0.3 - 1.0, 1e-15);
  const auto s = parse_fn_spec("polynomial:7,5,-2/std");
  EXPECT_NEAR(s(0.3), oracle::gini(0.3), 1e-14);
  const auto chain = parse_fn_spec("gini/tw:2/tw:0.5");
  EXPECT_NEAR(chain(0.7), oracle::gini(0.7), 1e-15);
}

TEST(ParseSpec, Errors) {
  for (const char* bad : {"", "nosuch", "gini:1", "mzr", "mzr:2", "gini/", "gini/tw", "gini/tw:0",
                          "gini/tw:-1", "gini/affine:1,2", "gini/affine:0,0,0", "gini/bogus",
                          "gini/std:1", "polynomial:", "mzr:0.3x"}) {
    EXPECT_THROW(parse_fn_spec(bad), std::invalid_argument) << bad;
  }
}

TEST(ParseSpec, SpecRoundTrip) {
  const std::vector<ImpurityFn> fns = {
      entropy(), gini(), power_minus(1.5), power_plus(0.3), mzr(0.1 + 0.2), km_sqrt(),
      cost_insensitive(0.7), sym_quartic(), quartic_degenerate(), polynomial({0.1, 1.0, -1.0 / 3.0}),
      apply_tw(mzr(0.3), WeightFactor(1.0 / 3.0)), affine(entropy(), 0.7, -0.1, 1e-9),
      standard_form(apply_tw(gini(), WeightFactor(2.0)))};
  for (const auto& f : fns) {
    const auto back = parse_fn_spec(f.spec());
    EXPECT_EQ(back.spec(), f.spec());
    for (double p : oracle::grid(0.0, 1.0, 33)) EXPECT_EQ(back(p), f(p)) << f.spec();
  }
}
