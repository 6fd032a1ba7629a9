// Small reference values for each public operation.

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "accelseries/builtins.hpp"
#include "accelseries/diagnostics.hpp"
#include "accelseries/transforms.hpp"
#include "oracles.hpp"

using namespace accel;
using oracle::q;

TEST(ReferenceValues, ParseDecimal) {
  const auto ln2 = parse_decimal<Extended>("0.69314718055994530942");
  EXPECT_LT(to_double(rel_error(ln2, math<Extended>::log(Extended(2)))), 1e-19);
  EXPECT_EQ(parse_decimal<Rational>("0"), Rational(0));
  EXPECT_EQ(parse_decimal<double>("0"), 0.0);
  EXPECT_EQ(parse_decimal<double>("-0.020490610771"), -0.020490610771);
}

TEST(ReferenceValues, RelError) {
  EXPECT_EQ(rel_error(Rational(7) / 10, Rational(7) / 10), Rational(0));
  EXPECT_EQ(rel_error(q(1, 5), q(1, 4)), q(1, 5));
}

TEST(ReferenceValues, PartialSums) {
  EXPECT_EQ(partial_sums(builtin<Rational>("example3"), 2).values,
            (std::vector<Rational>{1, q(1, 2), q(5, 6)}));
  EXPECT_EQ(partial_sums(builtin<Rational>("geometric", {.x = "1"}), 3).values,
            (std::vector<Rational>{1, 0, 1, 0}));
  EXPECT_EQ(partial_sums(builtin<Rational>("arith_geometric", {.x = "1"}), 5).values,
            (std::vector<Rational>{1, -1, 2, -2, 3, -3}));
}

TEST(ReferenceValues, Beta) {
  const auto ln2 = builtin<Rational>("example3");
  EXPECT_EQ(beta(ln2, 0), q(1, 2));
  EXPECT_EQ(beta(ln2, 1), q(2, 3));
}

TEST(ReferenceValues, BetaTendsToX) {
  for (const auto& name : builtin_names()) {
    SeriesParams params;
    if (name == "one_f_zero") params.rho = "1.5";
    if (name == "hypergeometric_pFq") params.a = {"1", "1.5"}, params.b = {"2"};
    const auto s = builtin<Float30>(name, params);
    if (!s.asymptotics() || s.asymptotics()->r != 1) continue;
    const SeriesTerms<Float30> terms(s, 1001);
    EXPECT_LT(std::abs(to_double(terms.beta(1000)) - s.asymptotics()->x), 0.05) << name;
  }
}

TEST(ReferenceValues, BuiltinLimits) {
  EXPECT_NEAR(to_double(*builtin<Extended>("example1").known_limit()), 0.636014527491066581, 1e-17);
  EXPECT_EQ(*builtin<Rational>("arith_geometric", {.x = "1"}).known_limit(), q(1, 4));
}

TEST(ReferenceValues, Aitken) {
  const std::vector<Rational> flat{1, 0, 1, 0};
  EXPECT_EQ(aitken<Rational>(flat), (std::vector<Rational>{q(1, 2), q(1, 2)}));
  const std::vector<Rational> ln2{1, q(1, 2), q(5, 6)};
  EXPECT_EQ(aitken<Rational>(ln2), (std::vector<Rational>{q(7, 10)}));
  const std::vector<Rational> constant{3, 3, 3};
  EXPECT_THROW((void)aitken<Rational>(constant), DegenerateDifferenceError);
  EXPECT_EQ(aitken_alternating(builtin<Rational>("example3"), 0), q(7, 10));
  const auto geometric = builtin<Rational>("geometric", {.x = "1"});
  for (std::size_t n = 0; n < 6; ++n) EXPECT_EQ(aitken_alternating(geometric, n), q(1, 2));
}

TEST(ReferenceValues, SPhiFamiliesAtFirstOrder) {
  const auto ln2 = builtin<Rational>("example3");
  const SeriesTerms<Rational> terms(ln2, 10);
  const auto two_point = method_s_phi(terms, PhiFamily<Rational>::two_point_powers(), 1);
  for (std::size_t n = 0; n < two_point.row_size(1); ++n)
    EXPECT_EQ(two_point.at(1, n), aitken_alternating(terms, n));
  const auto ratio = method_s_phi(terms, PhiFamily<Rational>::ratio_powers(), 1);
  EXPECT_EQ(ratio.at(1, 0), q(7, 10));
  const auto s = method_s(terms, 4);
  const auto w = method_s_phi(terms, PhiFamily<Rational>::weniger_tilde(), 4);
  for (int k = 0; k <= 4; ++k)
    for (std::size_t n = 0; n < s.row_size(k); ++n) EXPECT_EQ(s.at(k, n), w.at(k, n));
}

TEST(ReferenceValues, PhiTildeFirstOrder) {
  for (std::size_t n = 0; n < 10; ++n) {
    EXPECT_EQ(phi_tilde(Method::Levin, 1, n, Rational(1)), Rational(1));
    EXPECT_EQ(phi_tilde(Method::Weniger, 1, n, Rational(1)), Rational(1));
  }
  EXPECT_EQ(phi_tilde(Method::Weniger, 2, 0, Rational(1)), Rational(3));
}

TEST(ReferenceValues, LevinTables) {
  const auto ln2 = builtin<Rational>("example3");
  const SeriesTerms<Rational> terms(ln2, 9);
  const auto pq = levin_weniger(terms, Method::Levin, Rational(1), 4, Realization::PqRecurrence);
  const auto ex = levin_weniger(terms, Method::Levin, Rational(1), 4, Realization::Explicit);
  EXPECT_EQ(pq.at(1, 0), q(7, 10));
  EXPECT_EQ(levin_explicit(terms, Method::Levin, Rational(1), 1, 0), q(7, 10));
  for (int k = 0; k <= 4; ++k)
    for (std::size_t n = 0; n < pq.row_size(k); ++n) {
      EXPECT_EQ(pq.at(k, n), ex.at(k, n));
      if (k == 0) {
        EXPECT_EQ(ex.at(0, n), terms.sum(n));
      }
      if (k == 1) {
        EXPECT_EQ(pq.at(1, n), aitken_alternating(terms, n));
      }
    }
  const auto w = levin_weniger(builtin<Rational>("arith_geometric", {.x = "1"}), Method::Weniger,
                               Rational(1), 3, 12);
  for (std::size_t n = 0; n < w.row_size(3); ++n) EXPECT_EQ(w.at(3, n), q(1, 4));
}

TEST(ReferenceValues, DiagnosticValues) {
  const auto ln2 = builtin<Rational>("example3");
  const SeriesTerms<Rational> terms(ln2, 8);
  const auto s = method_s(terms, 3);
  const auto lev = levin_weniger(terms, Method::Levin, Rational(1), 3);
  for (std::size_t n = 0; n < 5; ++n) EXPECT_EQ(d_value(terms, s, 0, n), Rational(1));
  EXPECT_EQ(d_value(terms, s, 1, 0), q(-2, 105));
  EXPECT_EQ(d_value(terms, s, 2, 0), q(-8, 3465));
  EXPECT_EQ(lemma2_check(terms, s, 1, 0), Rational(0));
  EXPECT_EQ(lemma2_check(terms, lev, 2, 3), Rational(0));
  EXPECT_EQ(delta_s1_identity(terms, s, 0), Rational(0));
  for (std::size_t n = 0; n < 4; ++n) EXPECT_EQ(theorem2_ratio(terms, s, 0, n), Rational(0));
}

TEST(ReferenceValues, Theorem1AtHundred) {
  const auto v = theorem1_scaling(builtin<Float30>("example3"), MethodSpec<Float30>{Method::S}, 1, {100});
  const double expected = -(100.0 * 100.0 * 102.0) / (103.0 * 205.0 * 207.0);
  EXPECT_NEAR(to_double(v.front().value), expected, 1e-12);
  EXPECT_LE(std::abs(expected + 0.25), 2.0 / 100);
}

TEST(ReferenceValues, Theorem2AtHundred) {
  const auto ln2 = builtin<Float30>("example3");
  const SeriesTerms<Float30> terms(ln2, 104);
  const auto t = method_s(terms, 2);
  EXPECT_LE(std::abs(to_double(theorem2_ratio(terms, t, 1, 100))) * 100 * 100, 10.0);
}

TEST(ReferenceValues, DeltaS1Identity) {
  const auto geometric = builtin<Rational>("geometric", {.x = "1"});
  const SeriesTerms<Rational> g(geometric, 10);
  const auto t = method_s(g, 1);
  for (std::size_t n = 0; n < 6; ++n) {
    EXPECT_EQ(t.at(1, n + 1) - t.at(1, n), Rational(0));
    EXPECT_EQ(delta_s1_identity(g, t, n), Rational(0));
  }
  // binary64 rounding of s_1 is amplified by 1/alpha_4 = 17
  const SeriesTerms<double> e(builtin<double>("example1"), 8);
  const auto eps = std::numeric_limits<double>::epsilon();
  EXPECT_LE(std::abs(delta_s1_identity(e, method_s(e, 1), 3)), 17 * 4 * eps);
  const SeriesTerms<Extended> x(builtin<Extended>("example1"), 8);
  EXPECT_LE(std::abs(to_double(delta_s1_identity(x, method_s(x, 1), 3))), 1e-15);
}

TEST(ReferenceValues, DigitCounts) {
  const auto ln2 = builtin<Extended>("example3");
  const SeriesTerms<Extended> terms(ln2, 4);
  const auto& limit = *ln2.known_limit();
  EXPECT_EQ(format_digits(digits_of(method_s(terms, 3).at(3, 0), limit, 19)), "3.9");
  EXPECT_EQ(format_digits(digits_of(levin_weniger(terms, Method::Levin, Extended(1), 3).at(3, 0),
                                    limit, 19)),
            "4.0");
  EXPECT_EQ(digits_of(limit, limit, 19), 19.0);
}
