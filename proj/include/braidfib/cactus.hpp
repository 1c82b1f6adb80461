#pragma once

// Cacti and embedded trees of single polynomials, read off the singular leaves
// {arg p = arg v_k} through the critical points.
//
// Boundary arcs: the n-th roots of unity cut the circle at infinity into n
// arcs. A_1 is the arc just clockwise of angle 0 and labels increase
// clockwise, so the arc [2 pi m / n, 2 pi (m+1) / n] carries label n - m.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "braid_word.hpp"
#include "error.hpp"
#include "permutation.hpp"
#include "poly_loop.hpp"
#include "roots.hpp"

namespace braidfib {

struct LeafEnd {
  bool at_root = false;
  int index = 0;  // root index (0-based) or arc label (1-based)
  cd point;       // last traced point
};

struct SingularLeaf {
  int saddle = 0;  // index into Cactus::saddles
  LeafEnd out[2];  // the two branches with growing |p|
  LeafEnd in[2];   // the two branches with shrinking |p|
  int steps = 0;
};

struct Cactus {
  int n = 0;
  std::vector<cd> roots;
  std::vector<Saddle> saddles;        // ordered by increasing arg of the value
  std::vector<Permutation> tau;       // tau[k] for saddles[k]
  std::vector<std::pair<int, int>> arcs;        // arc labels (i < j) of tau[k]
  std::vector<std::pair<int, int>> root_edges;  // root indices joined by leaf k
  std::vector<SingularLeaf> leaves;
  std::string convention = "A_1 clockwise-adjacent to angle 0, labels increase clockwise";

  // tau_1 applied first, then tau_2, ...
  Permutation product() const {
    auto p = Permutation::identity(n);
    for (const auto& t : tau) p = p.then(t);
    return p;
  }

  // Transposition of the saddle nearest to c.
  const Permutation& tau_near(cd c) const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < saddles.size(); ++k)
      if (std::abs(saddles[k].point - c) < std::abs(saddles[best].point - c)) best = k;
    return tau[best];
  }
};

struct CactusOptions {
  double radius = 0;          // R; 0 selects 2 (1 + max |roots|, |critical points|)
  double arg_gap = 1e-9;      // minimal separation of critical arguments (and from 0)
  int max_steps = 200000;
};

namespace detail {

struct LeafTracer {
  const std::vector<cd>& p;
  std::vector<cd> dp;
  std::vector<cd> ddp;
  const std::vector<Saddle>& saddles;
  int self = 0;
  double h0 = 0;
  double phi = 0;
  int steps = 0;
  int max_steps = 0;

  // Newton solve p(u) = w from u.
  bool correct(cd& u, cd w) const {
    const double tol = 1e-13 * (1.0 + std::abs(w));
    for (int it = 0; it < 12; ++it) {
      const auto h = horner(p, u);
      const cd r = h.value - w;
      if (std::abs(r) <= tol) return true;
      if (h.derivative == cd{}) return false;
      u -= r / h.derivative;
    }
    return std::abs(poly_eval(p, u) - w) <= 1e-10 * (1.0 + std::abs(w));
  }

  void check_clear(cd u) const {
    for (std::size_t k = 0; k < saddles.size(); ++k) {
      if (static_cast<int>(k) == self) continue;
      if (std::abs(u - saddles[k].point) < 0.5 * h0) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "singular leaf of critical point %d runs into critical point %d; polynomial is not generic",
                      self + 1, static_cast<int>(k) + 1);
        fail(ErrorKind::NonGeneric, buf);
      }
    }
  }

  // Follows p(u) = rho e^{i phi} from (u, rho) to rho_end (rho_end = 0 ends at a root).
  cd follow(cd u, double rho, double rho_end, double stop_radius) {
    const cd dir = std::polar(1.0, phi);
    const bool outward = rho_end > rho;
    while (true) {
      if (++steps > max_steps) fail(ErrorKind::TracingFailure, "singular leaf tracing exceeded the step budget");
      if (outward && std::abs(u) >= stop_radius) return u;
      const cd d = horner(dp, u).value;
      double h = std::max(h0, 0.1 * std::abs(u));
      for (const auto& s : saddles) h = std::min(h, std::max(0.25 * std::abs(u - s.point), 0.25 * h0));
      double drho = h * std::abs(d);
      if (!outward) drho = std::min(drho, rho - rho_end);
      for (int tries = 0;; ++tries) {
        if (tries > 40) fail(ErrorKind::TracingFailure, "singular leaf corrector failed to converge");
        const double r1 = outward ? rho + drho : rho - drho;
        cd v = u + (outward ? 1.0 : -1.0) * drho * dir / d;
        const cd pred = v;
        if (correct(v, r1 * dir) && std::abs(v - pred) < 0.5 * h + 1e-12) {
          u = v;
          rho = r1;
          break;
        }
        drho *= 0.5;
      }
      check_clear(u);
      if (!outward && rho <= rho_end) return u;
    }
  }
};

inline int arc_label(cd u, double phi, int n) {
  const double psi = arg_2pi(u);
  long m = std::lround((n * psi - phi) / kTwoPi);
  m %= n;
  if (m < 0) m += n;
  return n - static_cast<int>(m);
}

}  // namespace detail

inline Cactus cactus_of(const std::vector<cd>& p, const CactusOptions& opt = {}) {
  const int n = static_cast<int>(p.size()) - 1;
  require(n >= 1 && std::abs(p.back() - cd(1.0)) < 1e-14, ErrorKind::InvalidInput, "cactus_of needs a monic polynomial");
  Cactus c;
  c.n = n;
  c.roots = find_roots(p).roots;
  c.saddles = saddles_of(p);
  const int m = static_cast<int>(c.saddles.size());
  double maxabs = 0;
  for (const auto& z : c.roots) maxabs = std::max(maxabs, std::abs(z));
  for (const auto& s : c.saddles) maxabs = std::max(maxabs, std::abs(s.point));
  const double R = opt.radius > 0 ? opt.radius : 2.0 * (1.0 + maxabs);
  require(2.0 * maxabs < R, ErrorKind::InvalidInput, "cactus_of: roots and critical points must lie inside R/2");
  if (n == 1) return c;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      require(std::abs(c.roots[i] - c.roots[j]) > 1e-9 * (1 + maxabs), ErrorKind::NonGeneric,
              "cactus_of: repeated root");
  for (int k = 0; k < m; ++k) {
    require(std::abs(c.saddles[k].value) > 0, ErrorKind::NonGeneric, "cactus_of: critical value 0");
    const double a = c.saddles[k].arg;
    require(a > opt.arg_gap && a < kTwoPi - opt.arg_gap, ErrorKind::NonGeneric,
            "cactus_of: a critical value has argument 0");
    if (k > 0)
      require(a - c.saddles[k - 1].arg > opt.arg_gap, ErrorKind::NonGeneric,
              "cactus_of: critical values share an argument");
  }
  double cmin = std::numeric_limits<double>::infinity();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) cmin = std::min(cmin, std::abs(c.saddles[a].point - c.saddles[b].point));
  for (const auto& z : c.roots)
    for (const auto& s : c.saddles) cmin = std::min(cmin, std::abs(z - s.point));
  if (!std::isfinite(cmin)) cmin = 1.0;
  const double h0 = cmin / 50.0;
  const double far = std::max(R, 4.0 * n * (1.0 + maxabs));

  detail::LeafTracer tr{p, poly_derivative(p), poly_derivative(poly_derivative(p)), c.saddles};
  tr.h0 = h0;
  tr.max_steps = opt.max_steps;
  for (int k = 0; k < m; ++k) {
    const auto& s = c.saddles[k];
    tr.self = k;
    tr.phi = s.arg;
    tr.steps = 0;
    const cd half2 = 0.5 * horner(tr.ddp, s.point).value;
    const double L = std::abs(s.value);
    const double drho = h0 * h0 * std::abs(half2);
    SingularLeaf leaf;
    leaf.saddle = k;
    for (int side = 0; side < 2; ++side) {
      const bool outward = side == 0;
      const double rho0 = outward ? L + drho : std::max(0.5 * L, L - drho);
      const cd w = rho0 * std::polar(1.0, s.arg);
      const cd delta = std::sqrt((w - s.value) / half2);
      for (int br = 0; br < 2; ++br) {
        cd u = s.point + (br == 0 ? delta : -delta);
        const cd guess = u;
        if (!tr.correct(u, w) || std::abs(u - guess) > 0.5 * std::abs(delta))
          fail(ErrorKind::TracingFailure, "singular leaf start did not converge");
        LeafEnd end;
        if (outward) {
          end.point = tr.follow(u, rho0, std::numeric_limits<double>::infinity(), far);
          end.index = detail::arc_label(end.point, s.arg, n);
          leaf.out[br] = end;
        } else {
          end.point = tr.follow(u, rho0, 0.0, far);
          end.at_root = true;
          int best = 0;
          for (int r = 1; r < n; ++r)
            if (std::abs(c.roots[r] - end.point) < std::abs(c.roots[best] - end.point)) best = r;
          if (std::abs(c.roots[best] - end.point) > 0.25 * cmin)
            fail(ErrorKind::TracingFailure, "singular leaf does not end at a root");
          end.index = best;
          leaf.in[br] = end;
        }
      }
    }
    leaf.steps = tr.steps;
    int a = leaf.out[0].index, b = leaf.out[1].index;
    if (a == b) fail(ErrorKind::TracingFailure, "both boundary ends of a singular leaf land on the same arc");
    if (leaf.in[0].index == leaf.in[1].index)
      fail(ErrorKind::TracingFailure, "both root ends of a singular leaf land on the same root");
    if (a > b) std::swap(a, b);
    c.arcs.emplace_back(a, b);
    c.tau.push_back(Permutation::transposition(n, a, b));
    c.root_edges.emplace_back(std::min(leaf.in[0].index, leaf.in[1].index),
                              std::max(leaf.in[0].index, leaf.in[1].index));
    c.leaves.push_back(leaf);
  }
  return c;
}

// Roots as vertices, one edge per singular leaf. Throws if the result is not a tree.
inline PlaneTree embedded_tree_of(const std::vector<cd>& p, const CactusOptions& opt = {}) {
  const Cactus c = cactus_of(p, opt);
  PlaneTree t;
  t.positions = c.roots;
  for (const auto& [a, b] : c.root_edges) t.edges.push_back({a + 1, b + 1, 1});
  try {
    t.validate();
  } catch (const Error& e) {
    fail(ErrorKind::TracingFailure, std::string("singular leaves do not form a tree: ") + e.what());
  }
  return t;
}

}  // namespace braidfib
