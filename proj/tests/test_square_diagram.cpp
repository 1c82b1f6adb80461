#include <gtest/gtest.h>

#include <braidfib/square_diagram.hpp>

#include "twist_cases.hpp"

using namespace braidfib;

namespace {

using Cycle = std::vector<std::pair<int, int>>;

PolyLoop quarter_loop() { return PolyLoop::closed_form({TrigCurve::mode(1, -0.25), TrigCurve()}); }

// Cacti at the midpoints between consecutive diagram events.
std::vector<Cycle> cactus_sequence(const SquareDiagram& d, const PolyLoop& g) {
  std::vector<double> ev{0.0, kTwoPi};
  for (const auto& c : d.crossings) ev.push_back(c.t);
  for (const auto& w : d.wraps) ev.push_back(w.t);
  std::sort(ev.begin(), ev.end());
  std::vector<Cycle> out;
  for (std::size_t k = 0; k + 1 < ev.size(); ++k) {
    const auto c = cactus_of(g.coeffs_at(0.5 * (ev[k] + ev[k + 1])));
    if (out.empty() || out.back() != c.arcs) out.push_back(c.arcs);
  }
  if (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

Cycle relabel(const Cycle& c, int n, int shift) {
  Cycle out;
  for (auto [i, j] : c) {
    int a = (i - 1 + shift) % n + 1, b = (j - 1 + shift) % n + 1;
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  return out;
}

}  // namespace

TEST(SquareDiagram, QuarterLoopIsRampichini) {
  const auto g = quarter_loop();
  const auto d = square_diagram(g, {512});
  EXPECT_EQ(d.curves(), 1);
  EXPECT_TRUE(d.crossings.empty());
  EXPECT_TRUE(d.tangencies.empty());
  EXPECT_TRUE(d.rampichini);
  ASSERT_EQ(d.wraps.size(), 1u);
  for (const auto& a : d.arcs) {
    EXPECT_EQ(std::make_pair(a.i, a.j), std::make_pair(1, 2));
    EXPECT_EQ(a.sign, 1);
  }
  for (double phi : {0.4, 2.0, 5.1}) {
    const auto f = fiber_band_word(d, phi);
    ASSERT_EQ(f.word.length(), 1);
    EXPECT_EQ(f.word.letters[0], Letter::band(1, 2, 1));
    EXPECT_EQ(f.euler_characteristic, 1);
  }
}

TEST(SquareDiagram, FiveTwo) {
  const auto g = from_roots(builtin_52());
  const auto d = square_diagram(g);
  EXPECT_EQ(d.curves(), 2);
  EXPECT_EQ(d.tangencies.size(), 6u);
  EXPECT_FALSE(d.rampichini);
  // labels read left to right at a fixed height are the cactus
  for (double t : {0.9, 2.2, 4.7}) {
    const auto c = cactus_of(g.coeffs_at(t));
    for (int j = 0; j < d.curves(); ++j) {
      const auto& arc = d.arc_at(j, t);
      const auto& tau = c.tau_near(d.data.saddle_at(t, j));
      EXPECT_EQ(tau, Permutation::transposition(3, arc.i, arc.j));
    }
  }
  EXPECT_EQ(diagram_svg(d), diagram_svg(square_diagram(g)));
}

TEST(SquareDiagram, CurveCountAndTangencies) {
  const auto r = cases::realize(3, {1, 2, -1, 2});
  const auto d = square_diagram(r.lifted.loop);
  EXPECT_EQ(d.curves(), 2);
  EXPECT_EQ(static_cast<int>(d.tangencies.size()), beta(r.word));
  for (const auto& p : d.tangencies) EXPECT_TRUE(p.strand >= 0 && p.strand < d.curves());
}

TEST(SquareDiagram, TwistOfS3MatchesTheFilm) {
  // The film's cacti between events: (2 3)(2 4)(1 2), (2 4)(3 4)(1 2), (2 4)(1 2)(3 4).
  const std::vector<Cycle> film{{{2, 3}, {2, 4}, {1, 2}}, {{2, 4}, {3, 4}, {1, 2}}, {{2, 4}, {1, 2}, {3, 4}}};
  const auto r = cases::realize(4, {3});
  const auto d = square_diagram(r.lifted.loop);
  EXPECT_EQ(d.crossings.size(), 2u);
  EXPECT_EQ(d.wraps.size(), 1u);
  const auto seq = cactus_sequence(d, r.lifted.loop);
  ASSERT_EQ(seq.size(), film.size());
  // Equal up to the choice of the first arc (a cyclic relabelling) and of the starting time.
  bool found = false;
  for (int shift = 0; shift < 4 && !found; ++shift)
    for (std::size_t start = 0; start < seq.size() && !found; ++start) {
      bool ok = true;
      for (std::size_t k = 0; k < seq.size(); ++k) ok &= relabel(seq[(start + k) % seq.size()], 4, shift) == film[k];
      found = ok;
    }
  EXPECT_TRUE(found);
}

TEST(FiberWord, PFiberedLengthIsConstant) {
  const auto r = cases::realize(3, {1, 2, 1, 2});
  const auto d = square_diagram(r.lifted.loop);
  ASSERT_TRUE(d.rampichini);
  std::vector<double> crit;
  for (const auto& c : d.crossings) crit.push_back(c.arg);
  int sum = 0;
  bool first = true;
  for (int q = 0; q < 24; ++q) {
    const double phi = kTwoPi * (q + 0.5) / 24;
    FiberWord f;
    try {
      f = fiber_band_word(d, phi);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::CriticalPhi);
      continue;
    }
    EXPECT_EQ(f.word.length(), r.word.length()) << phi;
    EXPECT_EQ(f.euler_characteristic, 3 - r.word.length());
    if (first) sum = f.word.exponent_sum(), first = false;
    EXPECT_EQ(f.word.exponent_sum(), sum);
  }
  EXPECT_FALSE(first);
}

TEST(FiberWord, RejectsCriticalPhi) {
  const auto d = square_diagram(from_roots(builtin_52()));
  try {
    fiber_band_word(d, d.tangencies[0].critical_arg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CriticalPhi);
  }
}

TEST(DiagramSvg, Layout) {
  const auto svg = diagram_svg(square_diagram(quarter_loop(), {512}));
  EXPECT_NE(svg.find("width=\"800\""), std::string::npos);
  EXPECT_NE(svg.find("height=\"800\""), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}
