#pragma once

// Independent reference computations for the tests. Nothing here calls into the
// code it checks.

#include <algorithm>
#include <array>
#include <complex>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

// Swaps positions (i, i+1) of the tuple [1..n] for each letter; returns the
// position of every strand at the end, i.e. strand s -> final position.
inline std::vector<int> strand_positions(int n, const std::vector<int>& signed_gens) {
  std::vector<int> tuple(n);
  for (int k = 0; k < n; ++k) tuple[k] = k + 1;
  for (int g : signed_gens) {
    const int i = std::abs(g);
    std::swap(tuple[i - 1], tuple[i]);
  }
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[tuple[k] - 1] = k + 1;
  return pos;
}

// Sign alternations of each generator's cyclic occurrence list, plus 2 per absent generator.
inline int beta(int n, const std::vector<int>& signed_gens) {
  int total = 0;
  for (int g = 1; g <= n - 1; ++g) {
    std::vector<int> s;
    for (int x : signed_gens)
      if (std::abs(x) == g) s.push_back(x > 0 ? 1 : -1);
    if (s.empty()) {
      total += 2;
      continue;
    }
    for (std::size_t k = 0; k < s.size(); ++k) total += s[k] != s[(k + 1) % s.size()];
  }
  return total;
}

inline cd horner(const std::vector<cd>& a, cd z) {
  cd s{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * z + *it;
  return s;
}

// Ascending coefficients of prod (u - r_j) by repeated multiplication.
inline std::vector<cd> expand(const std::vector<cd>& roots) {
  std::vector<cd> p{1.0};
  for (const auto& r : roots) {
    std::vector<cd> q(p.size() + 1);
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= r * p[k];
    }
    p = q;
  }
  return p;
}

// Max over a of min over b of |a - b|, symmetric.
inline double hausdorff(const std::vector<cd>& a, const std::vector<cd>& b) {
  auto one = [](const std::vector<cd>& x, const std::vector<cd>& y) {
    double m = 0;
    for (const auto& p : x) {
      double best = 1e300;
      for (const auto& q : y) best = std::min(best, std::abs(p - q));
      m = std::max(m, best);
    }
    return m;
  };
  return std::max(one(a, b), one(b, a));
}

// V - E + F counted with std::set.
inline int euler(const std::vector<std::array<int, 3>>& tris) {
  std::set<int> v;
  std::set<std::pair<int, int>> e;
  for (const auto& t : tris)
    for (int k = 0; k < 3; ++k) {
      v.insert(t[k]);
      const int a = t[k], b = t[(k + 1) % 3];
      e.insert({std::min(a, b), std::max(a, b)});
    }
  return static_cast<int>(v.size()) - static_cast<int>(e.size()) + static_cast<int>(tris.size());
}

// Triangulated torus on an m x m grid.
inline std::vector<std::array<int, 3>> torus(int m) {
  std::vector<std::array<int, 3>> t;
  auto id = [m](int i, int j) { return ((i + m) % m) * m + (j + m) % m; };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      t.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      t.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return t;
}

inline std::vector<int> random_word(std::mt19937_64& rng, int n, int len) {
  std::uniform_int_distribution<int> gen(1, n - 1), sg(0, 1);
  std::vector<int> w;
  for (int k = 0; k < len; ++k) w.push_back(gen(rng) * (sg(rng) ? 1 : -1));
  return w;
}

}  // namespace oracle
