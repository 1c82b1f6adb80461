#pragma once

// Strand systems given by trigonometric curves, validation, braid-word recovery
// from the real-part ordering, and trigonometric realization of Artin words.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "braid_word.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "permutation.hpp"
#include "trig_curve.hpp"

namespace braidfib {

// Crossing sign convention: +1 means a crossing is positive when the strand
// arriving from the left position has the smaller imaginary part at the
// crossing instant. Calibrated so that the 5_2 curves give exponent sum +4.
inline constexpr int kCrossingHandedness = 1;

struct ValidationOptions {
  double collision_tol = 1e-6;
  int grid = 4096;
  int refine = 16;
  double endpoint_tol = 1e-8;
};

struct StrandSystem {
  std::vector<TrigCurve> curves;
  Permutation closure;          // z_j(2 pi) = z_{closure(j)}(0)
  double min_separation = 0;    // from the last validation
  double min_separation_t = 0;

  int size() const { return static_cast<int>(curves.size()); }

  std::vector<cd> at(double t) const {
    std::vector<cd> z(curves.size());
    for (std::size_t j = 0; j < curves.size(); ++j) z[j] = curves[j](t);
    return z;
  }

  double scale() const {
    double s = 0;
    for (const auto& c : curves) s = std::max(s, c.l1_norm());
    return s;
  }
};

namespace detail {

inline double min_pair_distance(const std::vector<cd>& z) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) m = std::min(m, std::abs(z[i] - z[j]));
  return m;
}

// Golden-section minimization of f on [a, b].
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, int iters = 60) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < iters && b - a > 1e-15; ++k) {
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a), fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace detail

// Minimum pairwise distance over [0, 2 pi] of the strands produced by eval(t):
// dense grid, then x`refine` subsampling and golden-section polish near every
// local minimum of the grid minimum.
template <class Eval>
std::pair<double, double> min_separation(Eval&& eval, int grid, int refine) {
  std::vector<double> d(grid + 1);
  parallel_for(grid + 1, [&](std::size_t k) { d[k] = detail::min_pair_distance(eval(kTwoPi * k / grid)); });
  double best = std::numeric_limits<double>::infinity(), best_t = 0;
  const double h = kTwoPi / grid;
  auto f = [&](double t) { return detail::min_pair_distance(eval(t)); };
  for (int k = 0; k <= grid; ++k) {
    const double prev = k > 0 ? d[k - 1] : d[k];
    const double next = k < grid ? d[k + 1] : d[k];
    if (d[k] < best) best = d[k], best_t = kTwoPi * k / grid;
    if (d[k] > prev || d[k] > next) continue;
    const double lo = std::max(0.0, kTwoPi * k / grid - h), hi = std::min(kTwoPi, kTwoPi * k / grid + h);
    double sub_t = lo, sub = f(lo);
    for (int s = 1; s <= 2 * refine; ++s) {
      const double t = lo + (hi - lo) * s / (2 * refine);
      const double v = f(t);
      if (v < sub) sub = v, sub_t = t;
    }
    const double step = (hi - lo) / (2 * refine);
    auto [tm, vm] = detail::golden_min(f, std::max(lo, sub_t - step), std::min(hi, sub_t + step));
    if (vm < best) best = vm, best_t = tm;
  }
  return {best, best_t};
}

// Checks pairwise disjointness and endpoint matching; fills closure and
// min_separation. Throws NotABraid on failure.
inline StrandSystem validated(StrandSystem s, const ValidationOptions& opt = {}) {
  const int n = s.size();
  require(n >= 1, ErrorKind::InvalidInput, "strand system needs at least one strand");
  const double scale = 1.0 + s.scale();
  std::vector<cd> start = s.at(0.0), end = s.at(kTwoPi);
  std::vector<int> img(n, 0);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      const double dd = std::abs(end[i] - start[j]);
      if (dd < bd) bd = dd, best = j;
    }
    require(bd <= opt.endpoint_tol * scale && !used[best], ErrorKind::NotABraid,
            "strand " + std::to_string(i + 1) + " does not end at a starting point");
    used[best] = true;
    img[i] = best + 1;
  }
  s.closure = Permutation(img);
  if (n >= 2) {
    auto [m, t] = min_separation([&](double tt) { return s.at(tt); }, opt.grid, opt.refine);
    s.min_separation = m;
    s.min_separation_t = t;
    if (!(m > opt.collision_tol)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "strands meet (distance %.3g) at t=%.9f", m, t);
      fail(ErrorKind::NotABraid, buf);
    }
  } else {
    s.min_separation = std::numeric_limits<double>::infinity();
  }
  return s;
}

// The three 5_2 curves z_j(t) = w(t + 2 pi j), j = 1, 2, 3, with
// w(t) = -cos(2t/3) - 3/4 cos(5t/3) - i (sin(4t/3) + 1/2 sin(t/3)).
inline TrigCurve builtin_52_base() {
  return TrigCurve({{2, -0.5}, {-2, -0.5}, {5, -0.375}, {-5, -0.375},
                    {4, -0.5}, {-4, 0.5}, {1, -0.25}, {-1, 0.25}},
                   3);
}

inline StrandSystem builtin_52() {
  StrandSystem s;
  const TrigCurve w = builtin_52_base();
  for (int j = 1; j <= 3; ++j) s.curves.push_back(w.shifted(kTwoPi * j));
  return validated(std::move(s));
}

// ---------------------------------------------------------------------------
// Word recovery.

struct RecoverOptions {
  int grid = 4096;
  double collision_tol = 1e-6;
  double time_tol = 1e-13;
};

namespace detail {

inline std::vector<int> real_order(const std::vector<cd>& z) {
  std::vector<int> o(z.size());
  std::iota(o.begin(), o.end(), 0);
  std::stable_sort(o.begin(), o.end(), [&](int a, int b) { return z[a].real() < z[b].real(); });
  return o;
}

// Position i (0-based) if q is p with positions i, i+1 exchanged, else -1.
inline int single_adjacent_swap(const std::vector<int>& p, const std::vector<int>& q) {
  int first = -1;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] != q[k]) {
      first = static_cast<int>(k);
      break;
    }
  if (first < 0 || first + 1 >= static_cast<int>(p.size())) return -1;
  if (p[first] != q[first + 1] || p[first + 1] != q[first]) return -1;
  for (std::size_t k = first + 2; k < p.size(); ++k)
    if (p[k] != q[k]) return -1;
  return first;
}

template <class Eval>
void resolve_crossings(Eval& eval, double t0, double t1, std::vector<int> p0, std::vector<int> p1,
                       const RecoverOptions& opt, std::vector<std::pair<double, Letter>>& out, int depth) {
  if (p0 == p1) return;
  const int i = single_adjacent_swap(p0, p1);
  if (i < 0) {
    if (t1 - t0 < opt.time_tol || depth > 80)
      fail(ErrorKind::Tangency, "simultaneous real-part ties near t=" + std::to_string(t0) +
                                    "; projection is not generic");
    const double tm = 0.5 * (t0 + t1);
    auto pm = real_order(eval(tm));
    resolve_crossings(eval, t0, tm, p0, pm, opt, out, depth + 1);
    resolve_crossings(eval, tm, t1, pm, p1, opt, out, depth + 1);
    return;
  }
  const int a = p0[i], b = p0[i + 1];  // a arrives from position i
  auto f = [&](double t) {
    const auto z = eval(t);
    return z[a].real() - z[b].real();
  };
  double lo = t0, hi = t1, flo = f(lo);
  for (int k = 0; k < 200 && hi - lo > opt.time_tol; ++k) {
    const double m = 0.5 * (lo + hi), fm = f(m);
    if ((fm < 0) == (flo < 0)) lo = m, flo = fm;
    else hi = m;
  }
  const double ts = 0.5 * (lo + hi);
  const auto z = eval(ts);
  const double dy = z[a].imag() - z[b].imag();
  if (std::abs(z[a] - z[b]) < opt.collision_tol) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "strands collide at t=%.9f", ts);
    fail(ErrorKind::NotABraid, buf);
  }
  // Persistent tie: the real parts agree across the whole bracket.
  if (std::abs(f(t0)) < 1e-13 && std::abs(f(t1)) < 1e-13)
    fail(ErrorKind::Tangency, "persistent real-part tie near t=" + std::to_string(ts));
  const int sign = (dy < 0 ? 1 : -1) * kCrossingHandedness;
  out.emplace_back(ts, Letter::artin(i + 1, sign));
}

}  // namespace detail

// Artin word of the strands eval(t), t in [0, 2 pi]. eval must return the
// strands in a fixed labeling that is continuous in t.
template <class Eval>
BraidWord recover_word(Eval&& eval, int n, const RecoverOptions& opt = {}) {
  BraidWord w;
  w.strands = n;
  if (n < 2) return w;
  std::vector<std::vector<int>> orders(opt.grid + 1);
  parallel_for(opt.grid + 1, [&](std::size_t k) { orders[k] = detail::real_order(eval(kTwoPi * k / opt.grid)); });
  std::vector<std::pair<double, Letter>> found;
  for (int k = 0; k < opt.grid; ++k)
    detail::resolve_crossings(eval, kTwoPi * k / opt.grid, kTwoPi * (k + 1) / opt.grid, orders[k],
                              orders[k + 1], opt, found, 0);
  std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [t, l] : found) w.letters.push_back(l);
  return w;
}

inline BraidWord recover_word(const StrandSystem& s, const RecoverOptions& opt = {}) {
  return recover_word([&](double t) { return s.at(t); }, s.size(), opt);
}

// ---------------------------------------------------------------------------
// Realization of Artin words.

struct ParametrizeOptions {
  int max_harmonics = 1024;
  ValidationOptions validation{};
};

namespace detail {

inline double smoothstep(double s) { return s * s * (3.0 - 2.0 * s); }

// Piecewise path of the strand that starts at position p (1-based), t in [0, 2 pi].
inline cd word_path(const BraidWord& w, const std::vector<std::vector<int>>& pos_before, int p, double t) {
  const int n = w.strands;
  const int L = w.length();
  auto x = [&](int k) { return static_cast<double>(k) - 0.5 * (n + 1); };
  if (L == 0) return x(p);
  double u = std::clamp(t / kTwoPi, 0.0, 1.0) * L;
  int slot = std::min(L - 1, static_cast<int>(std::floor(u)));
  const double s = smoothstep(u - slot);
  const int at = pos_before[slot][p - 1];  // position of this strand at slot start
  const auto& l = w.letters[slot];
  const int i = l.generator;
  if (at != i && at != i + 1) return x(at);
  const double c = 0.5 * (x(i) + x(i + 1));
  const double dir = l.sign * kCrossingHandedness;
  const cd e = std::polar(0.5, kPi * s * dir);
  return at == i ? c - e : c + e;
}

}  // namespace detail

// Realizes an Artin word by trigonometric strands with D harmonics per unit of
// period, doubling D until the round trip reproduces the permutation and the
// exponent sum.
inline StrandSystem parametrize(const BraidWord& w, int harmonics, const ParametrizeOptions& opt = {}) {
  w.validate();
  require(w.scheme == Scheme::Artin, ErrorKind::InvalidInput, "parametrize needs an Artin word");
  require(harmonics >= 1, ErrorKind::InvalidInput, "harmonics must be positive");
  const int n = w.strands;
  const int L = w.length();
  const Permutation perm = permutation_of(w);
  if (L == 0) {
    StrandSystem s;
    for (int p = 1; p <= n; ++p) s.curves.push_back(TrigCurve::constant(p - 0.5 * (n + 1)));
    return validated(std::move(s), opt.validation);
  }
  // pos_before[slot][strand] = position of strand (labeled by start position) at slot start
  std::vector<std::vector<int>> pos_before(L, std::vector<int>(n));
  {
    std::vector<int> pos(n);
    std::iota(pos.begin(), pos.end(), 1);
    for (int m = 0; m < L; ++m) {
      pos_before[m] = pos;
      const int i = w.letters[m].generator;
      for (auto& q : pos)
        if (q == i) q = i + 1;
        else if (q == i + 1) q = i;
    }
  }
  for (int D = harmonics; D <= opt.max_harmonics; D *= 2) {
    StrandSystem s;
    s.curves.resize(n);
    for (const auto& cyc : perm.cycles()) {
      const int Lc = static_cast<int>(cyc.size());
      auto f = [&](double t) {
        int k = std::min(Lc - 1, static_cast<int>(std::floor(t / kTwoPi)));
        return detail::word_path(w, pos_before, cyc[k], t - kTwoPi * k);
      };
      const int modes = D * Lc;
      const int M = std::max(64, 8 * modes + 8);
      const TrigCurve base = fourier_project(f, Lc, modes, M);
      for (int k = 0; k < Lc; ++k) s.curves[cyc[k] - 1] = base.shifted(kTwoPi * k);
    }
    try {
      s = validated(std::move(s), opt.validation);
      const BraidWord back = recover_word(s);
      if (permutation_of(back) == perm && back.exponent_sum() == w.exponent_sum()) return s;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotABraid && e.kind() != ErrorKind::Tangency) throw;
    }
  }
  fail(ErrorKind::InsufficientHarmonics,
       "parametrize: round trip failed up to " + std::to_string(opt.max_harmonics) + " harmonics");
}

}  // namespace braidfib
