#pragma once

// Preimages of (critical values, constant term) among monic polynomials, for
// counting the sheets of that covering in low degree.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "arg_analysis.hpp"
#include "poly_loop.hpp"
#include "roots.hpp"

namespace braidfib {

struct CoveringResult {
  std::vector<std::vector<cd>> polys;  // ascending coefficients, monic
  double min_separation = std::numeric_limits<double>::infinity();  // between distinct preimages
  double max_residual = 0;  // worst mismatch of recomputed (values, a0)
};

namespace detail {

// Distance between the unordered critical-value set of p and v, plus |a0 error|.
inline double covering_residual(const std::vector<cd>& p, std::vector<cd> v, cd a0) {
  std::vector<cd> got;
  for (const auto& s : saddles_of(p)) got.push_back(s.value);
  double best = std::numeric_limits<double>::infinity();
  std::sort(v.begin(), v.end(), [](cd a, cd b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  do {
    double m = 0;
    for (std::size_t q = 0; q < v.size(); ++q) m = std::max(m, std::abs(got[q] - v[q]));
    best = std::min(best, m);
  } while (std::next_permutation(v.begin(), v.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  }));
  return best + std::abs(p[0] - a0);
}

inline void finish(CoveringResult& r, const std::vector<cd>& v, cd a0) {
  for (std::size_t a = 0; a < r.polys.size(); ++a) {
    r.max_residual = std::max(r.max_residual, covering_residual(r.polys[a], v, a0));
    for (std::size_t b = a + 1; b < r.polys.size(); ++b) {
      double d = 0;
      for (std::size_t q = 0; q < r.polys[a].size(); ++q) d = std::max(d, std::abs(r.polys[a][q] - r.polys[b][q]));
      r.min_separation = std::min(r.min_separation, d);
    }
  }
}

}  // namespace detail

// u^2 + a1 u + a0 has critical value a0 - a1^2 / 4, so a1 = +-2 sqrt(a0 - v).
inline CoveringResult covering_preimages_2(cd v, cd a0) {
  require(v != a0 && v != cd{}, ErrorKind::NonGeneric, "need v != a0 and v != 0");
  CoveringResult r;
  const cd s = 2.0 * std::sqrt(a0 - v);
  r.polys.push_back({a0, s, 1.0});
  r.polys.push_back({a0, -s, 1.0});
  detail::finish(r, {v}, a0);
  return r;
}

// Cubics with p'(u) = 3 (u - c1)(u - c2), p(c1) = v1, p(c2) = v2, p(0) = a0.
// Multistart Newton in (c1, c2); distinct solutions closer than sep are merged.
inline CoveringResult covering_preimages_3(cd v1, cd v2, cd a0, int starts = 400, unsigned seed = 7,
                                           double sep = 1e-6) {
  require(v1 != v2 && v1 != a0 && v2 != a0, ErrorKind::NonGeneric, "critical values and a0 must be distinct");
  auto F = [&](cd c1, cd c2) {
    return std::array<cd, 2>{-0.5 * c1 * c1 * c1 + 1.5 * c1 * c1 * c2 + a0 - v1,
                             -0.5 * c2 * c2 * c2 + 1.5 * c2 * c2 * c1 + a0 - v2};
  };
  std::mt19937_64 rng(seed);
  const double R = 3.0 * std::cbrt(1.0 + std::max({std::abs(v1), std::abs(v2), std::abs(a0)}));
  std::uniform_real_distribution<double> U(-R, R);
  std::vector<std::array<cd, 2>> sols;
  for (int s = 0; s < starts; ++s) {
    cd c1(U(rng), U(rng)), c2(U(rng), U(rng));
    bool ok = false;
    for (int it = 0; it < 100; ++it) {
      const auto f = F(c1, c2);
      if (std::abs(f[0]) + std::abs(f[1]) < 1e-14 * (1 + std::abs(v1) + std::abs(v2) + std::abs(a0))) {
        ok = true;
        break;
      }
      const cd j11 = -1.5 * c1 * c1 + 3.0 * c1 * c2, j12 = 1.5 * c1 * c1;
      const cd j21 = 1.5 * c2 * c2, j22 = -1.5 * c2 * c2 + 3.0 * c1 * c2;
      const cd det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-300) break;
      c1 -= (j22 * f[0] - j12 * f[1]) / det;
      c2 -= (-j21 * f[0] + j11 * f[1]) / det;
      if (!std::isfinite(std::abs(c1)) || !std::isfinite(std::abs(c2))) break;
    }
    if (!ok || std::abs(c1 - c2) < sep) continue;
    bool fresh = true;
    for (const auto& q : sols)
      if (std::abs(q[0] - c1) < sep && std::abs(q[1] - c2) < sep) fresh = false;
    if (fresh) sols.push_back({c1, c2});
  }
  std::sort(sols.begin(), sols.end(), [](const auto& x, const auto& y) {
    return std::make_pair(x[0].real(), x[0].imag()) < std::make_pair(y[0].real(), y[0].imag());
  });
  CoveringResult r;
  for (const auto& [c1, c2] : sols) r.polys.push_back({a0, 3.0 * c1 * c2, -1.5 * (c1 + c2), 1.0});
  detail::finish(r, {v1, v2}, a0);
  return r;
}

}  // namespace braidfib
