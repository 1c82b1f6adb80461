#include <gtest/gtest.h>

#include <random>

#include <braidfib/roots.hpp>

#include "oracles.hpp"

using namespace braidfib;

TEST(Roots, QuadraticAndCubic) {
  EXPECT_LT(oracle::hausdorff(roots_of({-0.25, 0.0, 1.0}), {0.5, -0.5}), 1e-14);
  const double r = std::sqrt(3.0) / 2;
  EXPECT_LT(oracle::hausdorff(roots_of({0.0, -0.75, 0.0, 1.0}), {0.0, r, -r}), 1e-14);
}

TEST(Roots, ZeroRootsAreExact) {
  const auto z = roots_of({0.0, 0.0, 0.0, 1.0});
  ASSERT_EQ(z.size(), 3u);
  for (auto x : z) EXPECT_EQ(std::abs(x), 0.0);
}

TEST(Roots, RandomPolynomialsReconstruct) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 9;
    std::vector<cd> truth(n);
    for (auto& z : truth) z = cd(g(rng), g(rng));
    const auto a = oracle::expand(truth);
    const auto res = find_roots(a);
    ASSERT_EQ(res.roots.size(), static_cast<std::size_t>(n));
    EXPECT_LE(res.backward_error, 1e-12);
    for (const auto& z : res.roots) {
      double den = 0;
      for (std::size_t k = 0; k < a.size(); ++k) den += std::abs(a[k]) * std::pow(std::abs(z), static_cast<double>(k));
      EXPECT_LE(std::abs(oracle::horner(a, z)) / den, 1e-12);
    }
  }
}

TEST(Roots, WarmStartFindsTheSameSet) {
  const std::vector<cd> truth{cd(1, 1), cd(-2, 0.5), cd(0.3, -1), cd(0, 2)};
  const auto a = oracle::expand(truth);
  std::vector<cd> warm;
  for (auto z : truth) warm.push_back(z + cd(0.01, -0.02));
  EXPECT_LT(oracle::hausdorff(find_roots(a, &warm).roots, truth), 1e-12);
  EXPECT_LT(oracle::hausdorff(find_roots(a).roots, truth), 1e-12);
}

TEST(Roots, DerivativeAndHorner) {
  const std::vector<cd> a{cd(1, 2), cd(-1, 0), cd(0.5, 0.5), cd(1, 0)};
  const auto d = poly_derivative(a);
  ASSERT_EQ(d.size(), 3u);
  for (cd z : {cd(0.3, 0.1), cd(-1.2, 2.0)}) {
    const auto h = horner(a, z);
    EXPECT_LT(std::abs(h.value - oracle::horner(a, z)), 1e-14);
    EXPECT_LT(std::abs(h.derivative - oracle::horner(d, z)), 1e-13);
  }
}
