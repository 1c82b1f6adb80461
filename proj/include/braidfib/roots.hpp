#pragma once

// Simultaneous root finding (Aberth-Ehrlich) for complex polynomials given by
// ascending coefficients a_0 .. a_n.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace braidfib {

using cd = std::complex<double>;

// Seed phase offset; keeps initial guesses off symmetry axes of real polynomials.
inline constexpr double kAberthPhase = 0.4;

struct Horner {
  cd value;
  cd derivative;
};

inline Horner horner(const std::vector<cd>& a, cd z) {
  cd p{}, dp{};
  for (std::size_t k = a.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
  }
  return {p, dp};
}

inline cd poly_eval(const std::vector<cd>& a, cd z) { return horner(a, z).value; }

inline std::vector<cd> poly_derivative(const std::vector<cd>& a) {
  std::vector<cd> d;
  for (std::size_t k = 1; k < a.size(); ++k) d.push_back(a[k] * static_cast<double>(k));
  return d;
}

// |p(z)| / sum |a_k| |z|^k
inline double backward_error(const std::vector<cd>& a, cd z) {
  double den = 0, zk = 1;
  for (const auto& c : a) {
    den += std::abs(c) * zk;
    zk *= std::abs(z);
  }
  if (den == 0) return 0;
  return std::abs(poly_eval(a, z)) / den;
}

struct RootResult {
  std::vector<cd> roots;
  double backward_error = 0;  // max over roots
  int iterations = 0;
};

struct RootOptions {
  int max_iterations = 500;
  double tolerance = 1e-12;  // accepted backward error
};

inline RootResult find_roots(std::vector<cd> a, const std::vector<cd>* warm_start = nullptr,
                             RootOptions opt = {}) {
  while (!a.empty() && a.back() == cd{}) a.pop_back();
  require(!a.empty(), ErrorKind::InvalidInput, "zero polynomial has no root set");
  const int n = static_cast<int>(a.size()) - 1;
  RootResult res;
  if (n == 0) return res;
  const std::vector<cd> original = a;

  // Exact zero roots.
  int zeros = 0;
  while (zeros < n && a[zeros] == cd{}) ++zeros;
  std::vector<cd> b(a.begin() + zeros, a.end());
  const int m = n - zeros;
  const cd lead = b.back();
  for (auto& c : b) c /= lead;

  std::vector<cd> z(m);
  if (m > 0) {
    bool warm = false;
    if (warm_start && static_cast<int>(warm_start->size()) == n) {
      // Drop warm-start points nearest to 0 for each exact zero root.
      std::vector<cd> ws = *warm_start;
      std::sort(ws.begin(), ws.end(), [](cd x, cd y) { return std::abs(x) < std::abs(y); });
      z.assign(ws.begin() + zeros, ws.end());
      warm = true;
      for (int i = 0; i < m && warm; ++i)
        for (int j = i + 1; j < m; ++j)
          if (std::abs(z[i] - z[j]) <= 1e-14 * (1 + std::abs(z[i]))) {
            warm = false;
            break;
          }
    }
    if (!warm) {
      double bound = 0;
      for (int k = 0; k < m; ++k) bound = std::max(bound, std::pow(std::abs(b[k]), 1.0 / (m - k)));
      const double r = std::max(bound, 1e-3);
      for (int k = 0; k < m; ++k) z[k] = std::polar(r, kAberthPhase + 2 * 3.14159265358979323846 * k / m);
    }

    auto relerr = [&](cd x) { return backward_error(b, x); };
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
      double worst = 0;
      for (int k = 0; k < m; ++k) {
        const auto h = horner(b, z[k]);
        if (h.value == cd{}) continue;
        const cd w = h.value / h.derivative;
        cd s{};
        for (int j = 0; j < m; ++j)
          if (j != k) s += 1.0 / (z[k] - z[j]);
        cd corr = w / (1.0 - w * s);
        if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = w;
        if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = cd(1e-8, 1e-8);
        z[k] -= corr;
        worst = std::max(worst, std::abs(corr) / std::max(1.0, std::abs(z[k])));
      }
      if (worst < 1e-15) break;
      if (worst < 1e-11) {
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) ok = relerr(z[k]) < 1e-16 * (m + 1);
        if (ok) break;
      }
    }
    res.iterations = it;
  }
  res.roots.assign(zeros, cd{});
  res.roots.insert(res.roots.end(), z.begin(), z.end());
  for (const auto& r : res.roots) res.backward_error = std::max(res.backward_error, backward_error(original, r));
  if (!(res.backward_error <= opt.tolerance))
    fail(ErrorKind::NonConvergence,
         "root finder did not converge; backward error " + std::to_string(res.backward_error));
  return res;
}

inline std::vector<cd> roots_of(const std::vector<cd>& a) { return find_roots(a).roots; }

}  // namespace braidfib
