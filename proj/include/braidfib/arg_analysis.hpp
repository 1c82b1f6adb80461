#pragma once

// Critical points of arg(g) on C x S^1: zeros of d/dt arg v_j(t) along the
// saddle point braid.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "poly_loop.hpp"

namespace braidfib {

enum class CriticalType { Morse, Degenerate };

inline const char* to_string(CriticalType c) { return c == CriticalType::Morse ? "morse" : "degenerate"; }

struct ArgCriticalPoint {
  double t = 0;
  int strand = 0;  // 0-based saddle label from tracking
  cd location;
  double critical_arg = 0;  // arg v_j(t) in [0, 2 pi)
  CriticalType type = CriticalType::Morse;
};

struct ArgOptions {
  double refine_tol = 1e-10;
  double plateau = 1e-8;
  int plateau_samples = 3;
  bool strict = false;  // degenerate plateaus throw instead of being flagged
};

namespace detail {

// Root of f on [a, b] given a sign change, bisected to width tol.
template <class F>
double bisect_root(F&& f, double a, double b, double tol) {
  double fa = f(a);
  for (int k = 0; k < 200 && b - a > tol; ++k) {
    const double m = 0.5 * (a + b), fm = f(m);
    if ((fm > 0) == (fa > 0)) a = m, fa = fm;
    else b = m;
  }
  return 0.5 * (a + b);
}

inline double wrap_t(double t) {
  if (t >= kTwoPi) t -= kTwoPi;
  if (t < 0) t += kTwoPi;
  return t;
}

}  // namespace detail

inline std::vector<ArgCriticalPoint> arg_critical_points(const CriticalData& cdat, const ArgOptions& opt = {}) {
  if (cdat.leaves_xn)
    fail(ErrorKind::LeavesXn, "critical value hits 0: loop leaves the space of admissible polynomials");
  const int N = cdat.N();
  const int m = cdat.count();
  std::vector<std::vector<ArgCriticalPoint>> per(m);
  parallel_for(m, [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    auto rate = [&](double t) { return cdat.rate_at(t, j); };
    auto record = [&](double t, CriticalType type) {
      ArgCriticalPoint p;
      p.t = detail::wrap_t(t);
      p.strand = j;
      p.location = cdat.saddle_at(t, j);
      p.critical_arg = arg_2pi(cdat.loop.eval(p.location, t));
      p.type = type;
      per[j].push_back(p);
    };
    std::vector<double> r(N + 1);
    for (int k = 0; k <= N; ++k) r[k] = cdat.rates[k][j];
    std::vector<bool> flat(N + 1, false);
    // Plateaus: runs of near-zero rate are reported once, not bracketed.
    for (int k = 0; k <= N;) {
      if (std::abs(r[k]) >= opt.plateau) {
        ++k;
        continue;
      }
      int e = k;
      while (e <= N && std::abs(r[e]) < opt.plateau) ++e;
      if (e - k >= opt.plateau_samples) {
        for (int q = k; q < e; ++q) flat[q] = true;
        if (opt.strict) fail(ErrorKind::NotMorse, "arg(g) has a degenerate critical set near t=" +
                                                      std::to_string(cdat.saddles.t[k]));
        record(cdat.saddles.t[(k + e - 1) / 2], CriticalType::Degenerate);
      }
      k = e;
    }
    for (int k = 0; k < N; ++k) {
      if (flat[k] || flat[k + 1]) continue;
      const double a = cdat.saddles.t[k], b = cdat.saddles.t[k + 1];
      if ((r[k] > 0) != (r[k + 1] > 0)) {
        record(detail::bisect_root(rate, a, b, opt.refine_tol), CriticalType::Morse);
        continue;
      }
      // A pair of zeros inside one cell: |rate| dips without a sign change at the samples.
      if (k > 0 && (flat[k - 1] || (r[k - 1] > 0) != (r[k] > 0))) continue;
      const double prev = k > 0 ? std::abs(r[k - 1]) : std::numeric_limits<double>::infinity();
      const bool dip = std::abs(r[k]) <= prev && std::abs(r[k]) <= std::abs(r[k + 1]);
      if (!dip) continue;
      const double s = r[k] > 0 ? 1.0 : -1.0;
      const double lo = k > 0 ? cdat.saddles.t[k - 1] : a;
      auto [tm, vm] = detail::golden_min([&](double t) { return s * rate(t); }, lo, b);
      if (vm < 0) {
        record(detail::bisect_root(rate, lo, tm, opt.refine_tol), CriticalType::Morse);
        record(detail::bisect_root(rate, tm, b, opt.refine_tol), CriticalType::Morse);
      }
    }
  });
  std::vector<ArgCriticalPoint> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.t != y.t ? x.t < y.t : x.strand < y.strand; });
  return out;
}

inline int morse_count(const std::vector<ArgCriticalPoint>& pts) {
  return static_cast<int>(std::count_if(pts.begin(), pts.end(), [](const auto& p) { return p.type == CriticalType::Morse; }));
}

// Net winding of each closed critical-value component around 0 (components are
// the cycles of the saddle closure permutation), by summed argument increments.
struct ValueComponent {
  std::vector<int> strands;  // 0-based labels
  int winding = 0;
  int critical_points = 0;
  bool even = true;
};

inline std::vector<ValueComponent> value_components(const CriticalData& cdat,
                                                    const std::vector<ArgCriticalPoint>& pts) {
  std::vector<ValueComponent> out;
  const int N = cdat.N();
  for (const auto& cyc : cdat.saddles.closure.cycles()) {
    ValueComponent c;
    double total = 0;
    for (int s : cyc) {
      c.strands.push_back(s - 1);
      for (int k = 0; k < N; ++k) total += std::arg(cdat.values[k + 1][s - 1] / cdat.values[k][s - 1]);
      for (const auto& p : pts)
        if (p.strand == s - 1 && p.type == CriticalType::Morse) ++c.critical_points;
    }
    c.winding = static_cast<int>(std::lround(total / kTwoPi));
    c.even = c.critical_points % 2 == 0;
    out.push_back(std::move(c));
  }
  return out;
}

struct PFiberResult {
  bool p_fibered = false;
  double margin = 0;  // min |d/dt arg v_j| after refinement
  double margin_t = 0;
  int margin_strand = 0;
  std::optional<double> first_change_t;
  std::optional<int> first_change_strand;
};

struct PFiberOptions {
  int N = 2048;
  double margin_tol = 1e-8;
  TrackOptions track{};
};

inline PFiberResult is_p_fibered(const CriticalData& cdat, const PFiberOptions& opt = {}) {
  if (cdat.leaves_xn)
    fail(ErrorKind::LeavesXn, "critical value hits 0: loop leaves the space of admissible polynomials");
  PFiberResult res;
  const int N = cdat.N();
  const int m = cdat.count();
  if (m == 0) {
    res.p_fibered = true;
    res.margin = std::numeric_limits<double>::infinity();
    return res;
  }
  res.margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k <= N; ++k) {
      const double a = std::abs(cdat.rates[k][j]);
      if (a < res.margin) res.margin = a, res.margin_t = cdat.saddles.t[k], res.margin_strand = j;
      if (k < N && (cdat.rates[k][j] > 0) != (cdat.rates[k + 1][j] > 0)) {
        if (!res.first_change_t || cdat.saddles.t[k] < *res.first_change_t) {
          res.first_change_t = cdat.saddles.t[k];
          res.first_change_strand = j;
        }
      }
    }
  }
  // Polish near the grid minimum.
  const double h = kTwoPi / N;
  const int j = res.margin_strand;
  auto [tm, vm] = detail::golden_min([&](double t) { return std::abs(cdat.rate_at(t, j)); },
                                     std::max(0.0, res.margin_t - h), std::min(kTwoPi, res.margin_t + h));
  if (vm < res.margin) res.margin = vm, res.margin_t = tm;
  res.p_fibered = !res.first_change_t && res.margin > opt.margin_tol;
  if (res.p_fibered) {
    // Refined local minima of |rate| can still dip through zero between samples.
    for (int jj = 0; jj < m && res.p_fibered; ++jj)
      for (int k = 1; k < N; ++k) {
        const double a = std::abs(cdat.rates[k][jj]);
        if (a > std::abs(cdat.rates[k - 1][jj]) || a > std::abs(cdat.rates[k + 1][jj])) continue;
        const double s = cdat.rates[k][jj] > 0 ? 1.0 : -1.0;
        auto [t2, v2] = detail::golden_min([&](double t) { return s * cdat.rate_at(t, jj); }, cdat.saddles.t[k - 1],
                                           cdat.saddles.t[k + 1]);
        if (std::abs(v2) < res.margin) res.margin = std::abs(v2), res.margin_t = t2, res.margin_strand = jj;
        if (v2 <= opt.margin_tol) {
          res.p_fibered = false;
          res.first_change_t = t2;
          res.first_change_strand = jj;
          break;
        }
      }
  }
  return res;
}

inline PFiberResult is_p_fibered(const PolyLoop& g, const PFiberOptions& opt = {}) {
  (void)track(g, Target::Roots, opt.N, opt.track);  // throws NotABraid for colliding roots
  return is_p_fibered(critical_data(g, opt.N, opt.track), opt);
}

struct MorseReport {
  int count = 0;
  int degenerate = 0;
  std::vector<int> per_strand;
  std::vector<ValueComponent> components;
  std::optional<int> beta;
  std::optional<int> mn;
  std::vector<ArgCriticalPoint> points;
  std::string comparison;
};

inline MorseReport morse_count_report(const CriticalData& cdat, std::optional<int> beta = std::nullopt,
                                      std::optional<int> mn = std::nullopt, const ArgOptions& opt = {}) {
  MorseReport r;
  r.points = arg_critical_points(cdat, opt);
  r.count = morse_count(r.points);
  r.degenerate = static_cast<int>(r.points.size()) - r.count;
  r.per_strand.assign(cdat.count(), 0);
  for (const auto& p : r.points)
    if (p.type == CriticalType::Morse) ++r.per_strand[p.strand];
  r.components = value_components(cdat, r.points);
  r.beta = beta;
  r.mn = mn;
  if (beta) {
    if (r.count == *beta) r.comparison = "count equals beta";
    else if (r.count > *beta) r.comparison = "count exceeds beta by " + std::to_string(r.count - *beta);
    else r.comparison = "count below beta by " + std::to_string(*beta - r.count);
  }
  return r;
}

}  // namespace braidfib
