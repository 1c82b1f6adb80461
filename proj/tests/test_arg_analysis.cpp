#include <gtest/gtest.h>

#include <random>

#include <braidfib/arg_analysis.hpp>

#include "oracles.hpp"
#include "twist_cases.hpp"

using namespace braidfib;

namespace {

PolyLoop quarter_loop() { return PolyLoop::closed_form({TrigCurve::mode(1, -0.25), TrigCurve()}); }

const CriticalData& five_two_data(int N) {
  static std::map<int, CriticalData> cache;
  auto it = cache.find(N);
  if (it == cache.end()) it = cache.emplace(N, critical_data(from_roots(builtin_52()), N)).first;
  return it->second;
}

// u^3 - 3 w^2 u + 2 w^3 - 2 with w = 1 + 0.3 e^{it}: the value at u = w is -2 for all t.
PolyLoop one_stationary_value() {
  const TrigCurve w({{0, 1.0}, {1, 0.3}});
  return PolyLoop::closed_form({w * w * w * cd(2.0) - TrigCurve::constant(2.0), w * w * cd(-3.0), TrigCurve()});
}

// Sign changes of the sampled rate per strand, counted cyclically along closed components.
int sampled_sign_changes(const CriticalData& c) {
  int total = 0;
  for (int j = 0; j < c.count(); ++j)
    for (int k = 0; k < c.N(); ++k) total += (c.rates[k][j] > 0) != (c.rates[k + 1][j] > 0);
  return total;
}

}  // namespace

TEST(ArgCriticalPoints, FiveTwoHasSix) {
  for (int N : {2048, 4096}) {
    const auto pts = arg_critical_points(five_two_data(N));
    EXPECT_EQ(morse_count(pts), 6) << N;
    EXPECT_EQ(pts.size(), 6u) << N;
    EXPECT_EQ(sampled_sign_changes(five_two_data(N)), 6) << N;
  }
}

TEST(ArgCriticalPoints, PointsAreZerosOfTheRate) {
  const auto& c = five_two_data(2048);
  for (const auto& p : arg_critical_points(c)) {
    EXPECT_GE(p.t, 0.0);
    EXPECT_LT(p.t, kTwoPi);
    // the rate changes sign across a 1e-9 window around t*
    const double a = c.rate_at(p.t - 1e-9, p.strand), b = c.rate_at(p.t + 1e-9, p.strand);
    EXPECT_LT(a * b, 0.0) << p.t;
    EXPECT_LT(std::abs(c.saddle_at(p.t, p.strand) - p.location), 1e-9);
    EXPECT_NEAR(p.critical_arg, arg_2pi(c.value_at(p.t, p.strand)), 1e-9);
  }
}

TEST(ArgCriticalPoints, StableUnderGridRefinement) {
  auto a = arg_critical_points(five_two_data(2048));
  auto b = arg_critical_points(five_two_data(4096));
  ASSERT_EQ(a.size(), b.size());
  auto by_t = [](const ArgCriticalPoint& x, const ArgCriticalPoint& y) { return x.t < y.t; };
  std::sort(a.begin(), a.end(), by_t);
  std::sort(b.begin(), b.end(), by_t);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LE(std::abs(a[k].t - b[k].t), ArgOptions{}.refine_tol);
}

TEST(ArgCriticalPoints, EvenPerClosedComponent) {
  const auto& c = five_two_data(2048);
  const auto comps = value_components(c, arg_critical_points(c));
  int total = 0;
  for (const auto& comp : comps) {
    EXPECT_TRUE(comp.even);
    total += comp.critical_points;
  }
  EXPECT_EQ(total, 6);
}

TEST(ArgCriticalPoints, QuarterLoopHasNone) {
  EXPECT_TRUE(arg_critical_points(critical_data(quarter_loop(), 512)).empty());
}

TEST(ArgCriticalPoints, StationaryValueIsDegenerate) {
  const auto c = critical_data(one_stationary_value(), 1024);
  const auto pts = arg_critical_points(c);
  ASSERT_FALSE(pts.empty());
  int degenerate = 0;
  for (const auto& p : pts) degenerate += p.type == CriticalType::Degenerate;
  EXPECT_GE(degenerate, 1);
  ArgOptions strict;
  strict.strict = true;
  try {
    arg_critical_points(c, strict);
    FAIL() << "strict mode should reject the plateau";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMorse);
  }
}

TEST(PFibered, Examples) {
  const auto q = is_p_fibered(quarter_loop());
  EXPECT_TRUE(q.p_fibered);
  EXPECT_NEAR(q.margin, 1.0, 1e-12);
  const auto f = is_p_fibered(five_two_data(2048));
  EXPECT_FALSE(f.p_fibered);
  ASSERT_TRUE(f.first_change_t.has_value());
}

TEST(PFibered, CollidingRootsAreNotABraid) {
  const auto g = PolyLoop::closed_form({TrigCurve({{0, -0.5}, {2, -0.25}, {-2, -0.25}}), TrigCurve()});
  try {
    is_p_fibered(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotABraid);
  }
}

TEST(TwistWords, CountEqualsBeta) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> L(1, 6);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 2;
    const auto r = cases::realize(n, oracle::random_word(rng, n, L(rng)));
    const auto c = critical_data(r.lifted.loop, 2048);
    const auto rep = morse_count_report(c, beta(r.word));
    EXPECT_EQ(rep.count, beta(r.word)) << format_braid_word(r.word);
    EXPECT_EQ(rep.degenerate, 0);
    EXPECT_EQ(rep.comparison, "count equals beta");
    EXPECT_EQ(beta(r.raw.word), beta(r.word));
  }
}

TEST(TwistWords, HomogeneousWordsArePFibered) {
  for (const auto& [n, g] : std::vector<std::pair<int, std::vector<int>>>{{2, {1, 1, 1}}, {3, {1, -2, 1, -2}}, {3, {1, 2}}}) {
    const auto r = cases::realize(n, g);
    const auto c = critical_data(r.lifted.loop, 2048);
    EXPECT_EQ(morse_count(arg_critical_points(c)), 0);
    EXPECT_TRUE(is_p_fibered(c).p_fibered);
  }
}

TEST(TwistWords, RawSaddlesStayPut) {
  const auto r = cases::realize(3, {1, -2, 2, 1});
  const auto c = critical_data(r.raw.loop, 1024);
  double drift = 0;
  for (const auto& row : c.saddles.points)
    for (std::size_t j = 0; j < row.size(); ++j) drift = std::max(drift, std::abs(row[j] - c.saddles.points[0][j]));
  EXPECT_LE(drift, 1e-12);
}

TEST(MorseReport, ComparesWithBeta) {
  const auto rep = morse_count_report(five_two_data(2048), 2, 2);
  EXPECT_EQ(rep.count, 6);
  EXPECT_EQ(rep.comparison, "count exceeds beta by 4");
  int sum = 0;
  for (int x : rep.per_strand) sum += x;
  EXPECT_EQ(sum, 6);
}
