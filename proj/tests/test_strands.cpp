#include <gtest/gtest.h>

#include <random>

#include <braidfib/strands.hpp>

#include "oracles.hpp"

using namespace braidfib;

namespace {

// The 5_2 strands written out literally.
cd five_two_literal(int j, double t) {
  const double s = t + kTwoPi * j;
  return cd(-std::cos(2 * s / 3) - 0.75 * std::cos(5 * s / 3), -(std::sin(4 * s / 3) + 0.5 * std::sin(s / 3)));
}

StrandSystem system_of(std::vector<TrigCurve> curves, const ValidationOptions& opt = {}) {
  StrandSystem s;
  s.curves = std::move(curves);
  return validated(std::move(s), opt);
}

}  // namespace

TEST(Builtin52, MatchesTheLiteralFormula) {
  const auto s = builtin_52();
  ASSERT_EQ(s.size(), 3);
  for (int k = 0; k <= 64; ++k) {
    const double t = kTwoPi * k / 64;
    const auto z = s.at(t);
    for (int j = 1; j <= 3; ++j) EXPECT_LT(std::abs(z[j - 1] - five_two_literal(j, t)), 1e-14) << j << " " << t;
  }
}

TEST(Builtin52, StrandsStayApart) {
  const auto s = builtin_52();
  double m = 1e300;
  for (int k = 0; k <= 4096; ++k) {
    const double t = kTwoPi * k / 4096;
    for (int a = 1; a <= 3; ++a)
      for (int b = a + 1; b <= 3; ++b) m = std::min(m, std::abs(five_two_literal(a, t) - five_two_literal(b, t)));
  }
  EXPECT_GT(m, 0.05);
  EXPECT_LE(s.min_separation, m + 1e-12);
  EXPECT_GT(s.min_separation, 0.5 * m);
}

TEST(Builtin52, ClosureIsThreeCycle) {
  const auto s = builtin_52();
  EXPECT_EQ(s.closure.cycle_type(), (std::vector<int>{3}));
  const auto end = s.at(kTwoPi), start = s.at(0);
  for (int j = 1; j <= 3; ++j) EXPECT_LT(std::abs(end[j - 1] - start[s.closure(j) - 1]), 1e-12);
}

TEST(RecoverWord, FiveTwoWordData) {
  // The strands start mid-word, so the recovered word is a rotation of s1 s2^3 s1 s2^-1.
  const auto w = recover_word(builtin_52());
  EXPECT_TRUE(same_up_to_rotation(w, artin_word(3, {1, 2, 2, 2, 1, -2}))) << format_braid_word(w);
  EXPECT_EQ(permutation_of(w).cycle_type(), (std::vector<int>{3}));
  EXPECT_EQ(w.exponent_sum(), 4);
}

TEST(RecoverWord, ConstantStrandsGiveEmptyWord) {
  const auto s = system_of({TrigCurve::constant(cd(-1, 0.3)), TrigCurve::constant(cd(1, -0.2))});
  EXPECT_EQ(recover_word(s).length(), 0);
}

TEST(RecoverWord, HalfTwistGivesOneLetter) {
  const auto s = system_of({TrigCurve::mode(1, 0.5, 2), TrigCurve::mode(1, -0.5, 2)});
  const auto w = recover_word(s);
  ASSERT_EQ(w.length(), 1);
  EXPECT_EQ(w.letters[0].generator, 1);
  EXPECT_EQ(w.letters[0].sign, kCrossingHandedness);
  const auto r = system_of({TrigCurve::mode(1, 0.5, 2).reversed(), TrigCurve::mode(1, -0.5, 2).reversed()});
  EXPECT_EQ(recover_word(r).exponent_sum(), -kCrossingHandedness);
}

TEST(RecoverWord, TimeShiftRotatesTheWord) {
  const auto s = builtin_52();
  const auto w = recover_word(s);
  for (double tau : {0.37, 1.9, 4.4}) {
    StrandSystem t;
    for (const auto& c : s.curves) t.curves.push_back(c.shifted(tau));
    const auto wt = recover_word(validated(std::move(t)));
    EXPECT_TRUE(same_up_to_rotation(w, wt)) << format_braid_word(wt);
  }
}

TEST(Validation, RejectsCollisions) {
  try {
    system_of({TrigCurve({{1, 0.5}, {-1, 0.5}}), TrigCurve({{1, -0.5}, {-1, -0.5}})});
    FAIL() << "expected a collision";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotABraid);
  }
  EXPECT_THROW(system_of({TrigCurve::constant(0.0), TrigCurve::constant(cd(1e-7, 0))}), Error);
  EXPECT_NO_THROW(system_of({TrigCurve::constant(0.0), TrigCurve::constant(cd(1e-5, 0))}));
}

TEST(Validation, RejectsEndpointMismatch) {
  // e^{it/3} alone does not close up.
  EXPECT_THROW(system_of({TrigCurve::mode(1, 1.0, 3)}), Error);
}

TEST(Parametrize, EmptyWordIsConstant) {
  const auto s = parametrize(artin_word(3, {}), 4);
  ASSERT_EQ(s.size(), 3);
  for (const auto& c : s.curves) EXPECT_EQ(c.max_abs_degree(), 0);
}

TEST(Parametrize, KnownWords) {
  {
    const auto w = recover_word(parametrize(artin_word(2, {1}), 4));
    EXPECT_EQ(w.exponent_sum(), 1);
    EXPECT_EQ(permutation_of(w).to_string(), "(1 2)");
  }
  {
    const auto w = recover_word(parametrize(artin_word(3, {1, 2, 2, 2, 1, -2}), 4));
    EXPECT_EQ(w.exponent_sum(), 4);
    EXPECT_EQ(permutation_of(w).to_string(), "(1 2 3)");
  }
}

TEST(Parametrize, RandomRoundTrips) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> N(2, 5), L(0, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = N(rng);
    const auto g = oracle::random_word(rng, n, L(rng));
    const auto w = artin_word(n, g);
    const auto back = recover_word(parametrize(w, 4));
    EXPECT_EQ(permutation_of(back), Permutation(oracle::strand_positions(n, g))) << format_braid_word(w);
    EXPECT_EQ(back.exponent_sum(), w.exponent_sum()) << format_braid_word(w);
  }
}

TEST(TrigCurve, ArithmeticMatchesPointwise) {
  const TrigCurve a({{1, cd(0.5, 0.2)}, {-2, cd(-0.3, 0)}}, 2);
  const TrigCurve b({{3, cd(0.1, -0.4)}, {0, cd(1, 0)}}, 3);
  for (double t : {0.0, 0.7, 2.2, 5.9}) {
    EXPECT_LT(std::abs((a * b)(t) - a(t) * b(t)), 1e-14);
    EXPECT_LT(std::abs((a + b)(t) - (a(t) + b(t))), 1e-14);
    EXPECT_LT(std::abs(a.shifted(0.4)(t) - a(t + 0.4)), 1e-14);
    EXPECT_LT(std::abs(a.reversed()(t) - a(-t)), 1e-13);
    const double h = 1e-5;
    EXPECT_LT(std::abs(a.derivative(t) - (a(t + h) - a(t - h)) / (2 * h)), 1e-8);
  }
}

TEST(TrigCurve, LongSeriesMatchNaiveSummation) {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> N(0, 1);
  std::map<int, cd> c;
  for (int d = -512; d <= 512; ++d)
    if (d % 97 != 3) c[d] = cd(N(rng), N(rng)) / (1.0 + std::abs(d));
  const TrigCurve z(c, 3);
  for (double t : {0.0, 0.1, 2.5, 6.2, 17.0}) {
    cd naive{}, dnaive{};
    for (const auto& [d, a] : c) {
      naive += a * std::polar(1.0, d * t / 3);
      dnaive += a * cd(0, d / 3.0) * std::polar(1.0, d * t / 3);
    }
    EXPECT_LT(std::abs(z(t) - naive), 1e-13 * z.l1_norm());
    EXPECT_LT(std::abs(z.derivative(t) - dnaive), 1e-13 * z.derivative_curve().l1_norm());
  }
}
