#pragma once

// Loops of monic complex polynomials g_t(u) = u^n + a_{n-1}(t) u^{n-1} + ... + a_0(t),
// root and critical-point continuation, critical values and their argument rates.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "permutation.hpp"
#include "roots.hpp"
#include "strands.hpp"
#include "trig_curve.hpp"

namespace braidfib {

// One piece of a loop: on [t0, t1] the coefficients are a_m(s) with local
// parameter s = 2 pi (t - t0) / (t1 - t0) in [0, 2 pi].
struct LoopSegment {
  double t0 = 0;
  double t1 = kTwoPi;
  std::vector<TrigCurve> coeffs;  // a_0 .. a_{n-1}
};

class PolyLoop {
 public:
  PolyLoop() = default;

  static PolyLoop closed_form(std::vector<TrigCurve> a) {
    PolyLoop g;
    g.n_ = static_cast<int>(a.size());
    g.segments_.push_back({0.0, kTwoPi, std::move(a)});
    return g;
  }

  // Constant loop at the polynomial with ascending monic coefficients p.
  static PolyLoop constant(const std::vector<cd>& p) {
    require(!p.empty() && std::abs(p.back() - cd(1.0)) < 1e-14, ErrorKind::InvalidInput,
            "polynomial must be monic");
    std::vector<TrigCurve> a;
    for (std::size_t m = 0; m + 1 < p.size(); ++m) a.push_back(TrigCurve::constant(p[m]));
    return closed_form(std::move(a));
  }

  static PolyLoop piecewise(int n, std::vector<LoopSegment> segs) {
    require(!segs.empty(), ErrorKind::InvalidInput, "piecewise loop needs segments");
    PolyLoop g;
    g.n_ = n;
    double t = 0;
    for (const auto& s : segs) {
      require(static_cast<int>(s.coeffs.size()) == n, ErrorKind::InvalidInput, "segment degree mismatch");
      require(std::abs(s.t0 - t) < 1e-12 && s.t1 > s.t0, ErrorKind::InvalidInput,
              "segments must tile [0, 2 pi] in order");
      t = s.t1;
    }
    require(std::abs(t - kTwoPi) < 1e-12, ErrorKind::InvalidInput, "segments must end at 2 pi");
    g.segments_ = std::move(segs);
    g.segments_.back().t1 = kTwoPi;
    return g;
  }

  int degree() const { return n_; }
  bool is_closed_form() const { return segments_.size() == 1; }
  const std::vector<LoopSegment>& segments() const { return segments_; }

  // Closed-form coefficients a_0 .. a_{n-1} (throws for piecewise loops).
  const std::vector<TrigCurve>& closed_coeffs() const {
    require(is_closed_form(), ErrorKind::ClosedFormRequired, "closed form required");
    return segments_.front().coeffs;
  }

  // Ascending coefficients a_0 .. a_n (a_n = 1) of g_t.
  std::vector<cd> coeffs_at(double t) const {
    const auto [seg, s] = locate(t);
    std::vector<cd> a(n_ + 1, cd{});
    for (int m = 0; m < n_; ++m) a[m] = seg->coeffs[m](s);
    a[n_] = 1.0;
    return a;
  }

  // d/dt of the ascending coefficients.
  std::vector<cd> dt_coeffs_at(double t) const {
    const auto [seg, s] = locate(t);
    const double f = kTwoPi / (seg->t1 - seg->t0);
    std::vector<cd> a(n_ + 1, cd{});
    for (int m = 0; m < n_; ++m) a[m] = seg->coeffs[m].derivative(s) * f;
    return a;
  }

  cd eval(cd u, double t) const { return poly_eval(coeffs_at(t), u); }
  cd du(cd u, double t) const { return horner(coeffs_at(t), u).derivative; }
  cd dt(cd u, double t) const { return poly_eval(dt_coeffs_at(t), u); }

  // Coefficients at t = 0 (the basepoint).
  std::vector<cd> basepoint() const { return coeffs_at(0.0); }
  std::vector<cd> endpoint() const { return coeffs_at(kTwoPi); }

  // Largest coefficient mismatch at segment joints and at the closing joint.
  double closure_gap() const {
    double gap = 0;
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      const auto& a = segments_[k];
      const auto& b = segments_[(k + 1) % segments_.size()];
      for (int m = 0; m < n_; ++m) gap = std::max(gap, std::abs(a.coeffs[m](kTwoPi) - b.coeffs[m](0.0)));
    }
    return gap;
  }

  // Upper bound on max |a_m(t)| over the loop, at least 1.
  double scale() const {
    double s = 1;
    for (const auto& seg : segments_)
      for (const auto& c : seg.coeffs) s = std::max(s, c.l1_norm());
    return s;
  }

  // t -> g_{2 pi - t}.
  PolyLoop reversed() const {
    std::vector<LoopSegment> segs;
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
      LoopSegment s;
      s.t0 = kTwoPi - it->t1;
      s.t1 = kTwoPi - it->t0;
      for (const auto& c : it->coeffs) s.coeffs.push_back(c.reversed().shifted(kTwoPi));
      segs.push_back(std::move(s));
    }
    segs.front().t0 = 0;
    if (segs.size() == 1) return closed_form(std::move(segs.front().coeffs));
    return piecewise(n_, std::move(segs));
  }

 private:
  std::pair<const LoopSegment*, double> locate(double t) const {
    require(!segments_.empty(), ErrorKind::InvalidInput, "empty loop");
    if (t < 0 || t > kTwoPi) t -= kTwoPi * std::floor(t / kTwoPi);
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double x, const LoopSegment& s) { return x < s.t1; });
    if (it == segments_.end()) --it;
    const double s = kTwoPi * (t - it->t0) / (it->t1 - it->t0);
    return {&*it, s};
  }

  int n_ = 0;
  std::vector<LoopSegment> segments_;
};

// Rescales the loops into consecutive subintervals of [0, 2 pi].
inline PolyLoop concatenate(const std::vector<PolyLoop>& loops, double tol = 1e-9) {
  require(!loops.empty(), ErrorKind::InvalidInput, "concatenate needs at least one loop");
  const int n = loops.front().degree();
  const double K = static_cast<double>(loops.size());
  for (std::size_t k = 0; k < loops.size(); ++k) {
    require(loops[k].degree() == n, ErrorKind::InvalidInput, "concatenate: degree mismatch");
    const auto e = loops[k].endpoint();
    const auto b = loops[(k + 1) % loops.size()].basepoint();
    double gap = 0, sc = 1;
    for (int m = 0; m <= n; ++m) gap = std::max(gap, std::abs(e[m] - b[m])), sc = std::max(sc, std::abs(b[m]));
    if (gap > tol * sc)
      fail(ErrorKind::BasepointMismatch, "concatenate: loop " + std::to_string(k + 1) +
                                             " does not end where the next loop starts");
  }
  std::vector<LoopSegment> segs;
  for (std::size_t k = 0; k < loops.size(); ++k) {
    const double a = kTwoPi * k / K, len = kTwoPi / K;
    for (const auto& s : loops[k].segments())
      segs.push_back({a + len * s.t0 / kTwoPi, a + len * s.t1 / kTwoPi, s.coeffs});
  }
  segs.front().t0 = 0;
  return PolyLoop::piecewise(n, std::move(segs));
}

// Monic product of (u - z_j(t)) over trigonometric strands, as ascending
// TrigCurve coefficients a_0 .. a_{n-1}. Terms whose frequency is not 2 pi
// periodic must cancel; they are dropped after a size check.
inline std::vector<TrigCurve> monic_product(const std::vector<TrigCurve>& z, double scale) {
  std::vector<TrigCurve> poly{TrigCurve::constant(1.0)};
  for (const auto& zj : z) {
    std::vector<TrigCurve> next(poly.size() + 1);
    for (std::size_t m = 0; m < poly.size(); ++m) {
      next[m + 1] += poly[m];
      next[m] -= poly[m] * zj;
    }
    poly = std::move(next);
  }
  poly.pop_back();  // leading 1
  std::vector<TrigCurve> out;
  for (auto& c : poly) {
    const int q = c.denominator();
    std::map<int, cd> keep;
    double dropped = 0;
    for (const auto& [d, v] : c.coeffs()) {
      if (d % q == 0) keep[d / q] += v;
      else dropped += std::abs(v);
    }
    require(dropped <= 1e-9 * scale, ErrorKind::InvalidInput,
            "strand product has non-periodic terms; the strands do not close up");
    TrigCurve r(std::move(keep), 1);
    r.prune(1e-15 * scale);
    out.push_back(std::move(r));
  }
  return out;
}

inline PolyLoop from_roots(const StrandSystem& s) {
  const double sc = std::pow(1.0 + s.scale(), std::max(1, s.size()));
  return PolyLoop::closed_form(monic_product(s.curves, sc));
}

// Ascending coefficients of a polynomial from its roots.
inline std::vector<cd> poly_from_roots(const std::vector<cd>& r) {
  std::vector<cd> a{1.0};
  for (const auto& z : r) {
    std::vector<cd> b(a.size() + 1, cd{});
    for (std::size_t m = 0; m < a.size(); ++m) {
      b[m + 1] += a[m];
      b[m] -= a[m] * z;
    }
    a = std::move(b);
  }
  return a;
}

inline std::vector<cd> roots_at(const PolyLoop& g, double t, const std::vector<cd>* warm = nullptr) {
  return find_roots(g.coeffs_at(t), warm).roots;
}

// ---------------------------------------------------------------------------
// Continuation.

enum class Target { Roots, CriticalPoints };

inline const char* to_string(Target w) { return w == Target::Roots ? "roots" : "critical_points"; }

// Monic polynomial whose roots are the tracked points at t.
inline std::vector<cd> target_poly(const PolyLoop& g, Target which, double t) {
  auto a = g.coeffs_at(t);
  if (which == Target::Roots) return a;
  auto d = poly_derivative(a);
  for (auto& c : d) c /= static_cast<double>(g.degree());
  return d;
}

struct TrackOptions {
  double collision_tol = 1e-6;
  double ambiguity_ratio = 2.0;
  int max_halvings = 20;
};

struct SampledBraid {
  Target which = Target::Roots;
  int N = 0;
  std::vector<double> t;                 // t_k = 2 pi k / N, k = 0..N
  std::vector<std::vector<cd>> points;   // points[k][strand]
  Permutation closure;                   // strand j at 2 pi sits where strand closure(j) starts
  double min_separation = std::numeric_limits<double>::infinity();

  int strands() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
};

namespace detail {

inline double min_distance(const std::vector<cd>& z) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) m = std::min(m, std::abs(z[i] - z[j]));
  return m;
}

// Nearest-neighbor assignment prev[a] -> next[match[a]]; empty if ambiguous.
inline std::vector<int> match_points(const std::vector<cd>& prev, const std::vector<cd>& next, double ratio) {
  const std::size_t n = prev.size();
  std::vector<int> match(n, -1);
  std::vector<bool> taken(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
    int best = -1;
    for (std::size_t b = 0; b < n; ++b) {
      const double d = std::abs(prev[a] - next[b]);
      if (d < d1) d2 = d1, d1 = d, best = static_cast<int>(b);
      else if (d < d2) d2 = d;
    }
    if (n > 1 && !(d2 >= ratio * d1)) return {};
    if (taken[best]) return {};
    taken[best] = true;
    match[a] = best;
  }
  return match;
}

[[noreturn]] inline void collision_at(double t, double d) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "points within %.3g at t=%.9f", d, t);
  fail(ErrorKind::NotABraid, buf);
}

}  // namespace detail

// Carries the labeled points pts from t0 to t1, halving the step whenever the
// nearest-neighbor match is ambiguous.
inline std::vector<cd> continue_points(const PolyLoop& g, Target which, double t0, const std::vector<cd>& pts,
                                       double t1, const TrackOptions& opt = {}, int depth = 0) {
  if (pts.empty()) return pts;
  auto next = find_roots(target_poly(g, which, t1), &pts).roots;
  const double sep = detail::min_distance(next);
  if (sep < opt.collision_tol) detail::collision_at(t1, sep);
  auto match = detail::match_points(pts, next, opt.ambiguity_ratio);
  if (match.empty()) {
    if (depth >= opt.max_halvings) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "matching stays ambiguous at t=%.9f after %d halvings", t1,
                    opt.max_halvings);
      fail(ErrorKind::NotABraid, buf);
    }
    const double tm = 0.5 * (t0 + t1);
    auto mid = continue_points(g, which, t0, pts, tm, opt, depth + 1);
    return continue_points(g, which, tm, mid, t1, opt, depth + 1);
  }
  std::vector<cd> out(pts.size());
  for (std::size_t a = 0; a < pts.size(); ++a) out[a] = next[match[a]];
  return out;
}

inline SampledBraid track(const PolyLoop& g, Target which, int N, const TrackOptions& opt = {}) {
  require(N >= 16, ErrorKind::InvalidInput, "tracking grid must have at least 16 samples");
  SampledBraid sb;
  sb.which = which;
  sb.N = N;
  sb.t.resize(N + 1);
  sb.points.resize(N + 1);
  for (int k = 0; k <= N; ++k) sb.t[k] = kTwoPi * k / N;
  auto first = find_roots(target_poly(g, which, 0.0)).roots;
  std::sort(first.begin(), first.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  if (first.size() > 1 && detail::min_distance(first) < opt.collision_tol)
    detail::collision_at(0.0, detail::min_distance(first));
  sb.points[0] = first;
  for (int k = 0; k < N; ++k) sb.points[k + 1] = continue_points(g, which, sb.t[k], sb.points[k], sb.t[k + 1], opt);
  for (const auto& p : sb.points) sb.min_separation = std::min(sb.min_separation, detail::min_distance(p));
  const int n = static_cast<int>(first.size());
  std::vector<int> img(n);
  if (n > 0) {
    const auto& end = sb.points[N];
    for (int j = 0; j < n; ++j) {
      int best = 0;
      for (int i = 1; i < n; ++i)
        if (std::abs(end[j] - first[i]) < std::abs(end[j] - first[best])) best = i;
      img[j] = best + 1;
    }
  }
  sb.closure = Permutation(img);
  return sb;
}

// Evaluates the tracked points at arbitrary t by continuation from the
// preceding grid sample; suitable as the eval callable of recover_word.
struct TrackedEval {
  const PolyLoop* loop;
  const SampledBraid* braid;
  TrackOptions opt{};

  std::vector<cd> operator()(double t) const {
    const int N = braid->N;
    t = std::clamp(t, 0.0, kTwoPi);
    int k = std::min(N - 1, static_cast<int>(std::floor(t / kTwoPi * N)));
    if (t == braid->t[k]) return braid->points[k];
    return continue_points(*loop, braid->which, braid->t[k], braid->points[k], t, opt);
  }
};

inline BraidWord braid_word_of(const PolyLoop& g, const SampledBraid& sb, const RecoverOptions& ropt = {}) {
  RecoverOptions o = ropt;
  o.grid = sb.N;
  return recover_word(TrackedEval{&g, &sb}, sb.strands(), o);
}

// ---------------------------------------------------------------------------
// Critical data.

struct CriticalData {
  PolyLoop loop;
  SampledBraid saddles;
  std::vector<std::vector<cd>> values;     // values[k][j] = g(c_j(t_k))
  std::vector<std::vector<double>> rates;  // d/dt arg v_j at t_k
  double min_abs_value = std::numeric_limits<double>::infinity();
  double value_tol = 1e-10;
  bool leaves_xn = false;  // some |v_j| below value_tol

  int N() const { return saddles.N; }
  int count() const { return saddles.strands(); }

  std::vector<cd> saddles_at(double t) const { return TrackedEval{&loop, &saddles}(t); }
  cd saddle_at(double t, int j) const { return saddles_at(t)[j]; }
  cd value_at(double t, int j) const { return loop.eval(saddle_at(t, j), t); }

  // Im(g_t(c_j, t) / v_j): the t-derivative of arg v_j, using g_u(c_j) = 0.
  double rate_at(double t, int j) const {
    const cd c = saddle_at(t, j);
    return std::imag(loop.dt(c, t) / loop.eval(c, t));
  }
};

inline CriticalData critical_data(const PolyLoop& g, int N, const TrackOptions& opt = {}) {
  CriticalData cdat;
  cdat.loop = g;
  cdat.saddles = track(g, Target::CriticalPoints, N, opt);
  const int m = cdat.saddles.strands();
  cdat.values.assign(N + 1, std::vector<cd>(m));
  cdat.rates.assign(N + 1, std::vector<double>(m));
  const double sc = g.scale();
  cdat.value_tol = 1e-10 * sc;
  parallel_for(N + 1, [&](std::size_t k) {
    const double t = cdat.saddles.t[k];
    const auto a = g.coeffs_at(t);
    const auto da = g.dt_coeffs_at(t);
    for (int j = 0; j < m; ++j) {
      const cd c = cdat.saddles.points[k][j];
      const cd v = poly_eval(a, c);
      cdat.values[k][j] = v;
      cdat.rates[k][j] = std::imag(poly_eval(da, c) / v);
    }
  });
  for (const auto& row : cdat.values)
    for (const auto& v : row) cdat.min_abs_value = std::min(cdat.min_abs_value, std::abs(v));
  cdat.leaves_xn = cdat.min_abs_value < cdat.value_tol;
  return cdat;
}

// ---------------------------------------------------------------------------
// Saddle prescription.

struct PrescribeOptions {
  double eps0 = 0;  // 0 selects 1e-3 * scale
  int max_steps = 200;
  ValidationOptions validation{1e-6, 1024, 8, 1e-8};
};

struct PrescribedLoop {
  PolyLoop loop;
  double eps = 0;
  double min_root_separation = 0;
};

// h_t(u) = n * int_0^u prod_j (w - c_j(t)) dw + eps, with the smallest eps on the
// grid {0, eps0, 2 eps0, ...} that keeps the roots pairwise distinct.
inline PrescribedLoop prescribe_saddle(const StrandSystem& c, const PrescribeOptions& opt = {}) {
  const int n = c.size() + 1;
  const double cs = std::pow(1.0 + c.scale(), n);
  const auto e = monic_product(c.curves, cs);  // coefficients of w^0 .. w^{n-2}
  std::vector<TrigCurve> h(n);
  h[0] = TrigCurve();
  for (int k = 0; k + 1 < n; ++k) h[k + 1] = e[k] * cd(static_cast<double>(n) / (k + 1));
  PolyLoop base = PolyLoop::closed_form(h);
  const double eps0 = opt.eps0 > 0 ? opt.eps0 : 1e-3 * base.scale();
  for (int step = 0; step <= opt.max_steps; ++step) {
    const double eps = step * eps0;
    auto coeffs = h;
    coeffs[0] = TrigCurve::constant(eps);
    PolyLoop g = PolyLoop::closed_form(coeffs);
    if (n < 2) return {g, eps, std::numeric_limits<double>::infinity()};
    auto [sep, where] =
        min_separation([&](double t) { return roots_at(g, t); }, opt.validation.grid, opt.validation.refine);
    (void)where;
    if (sep > opt.validation.collision_tol) return {g, eps, sep};
  }
  fail(ErrorKind::InvalidInput, "prescribe_saddle: no admissible eps separates the roots");
}

// ---------------------------------------------------------------------------
// Single-polynomial data and twist loops.

struct Saddle {
  cd point;
  cd value;
  double arg = 0;  // arg(value) in [0, 2 pi)
};

inline double arg_2pi(cd z) {
  double a = std::arg(z);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

// Critical points of p with their values, ordered by increasing arg of the value.
inline std::vector<Saddle> saddles_of(const std::vector<cd>& p) {
  std::vector<Saddle> out;
  if (p.size() < 3) return out;
  for (const auto& c : find_roots(poly_derivative(p)).roots) {
    const cd v = poly_eval(p, c);
    out.push_back({c, v, arg_2pi(v)});
  }
  std::sort(out.begin(), out.end(), [](const Saddle& a, const Saddle& b) { return a.arg < b.arg; });
  return out;
}

struct TwistOptions {
  double margin_fraction = 1.0 / 3.0;
  double min_margin = 1e-6;
  int check_grid = 4096;
};

struct TwistLoop {
  PolyLoop loop;
  std::vector<Saddle> saddles;  // of the base polynomial
  int index = 1;                // twisted critical value (1-based, arg order)
  int sign = 1;
  double margin = 0;            // min distance from the loop gamma to any critical value
};

namespace detail {

inline double point_segment_distance(cd p, cd a, cd b) {
  const cd d = b - a;
  const double len2 = std::norm(d);
  double s = len2 > 0 ? std::real((p - a) * std::conj(d)) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

// Winding number of the closed sampled curve z around w.
inline int winding(const std::vector<cd>& z, cd w) {
  double total = 0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const cd a = z[k] - w, b = z[(k + 1) % z.size()] - w;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

}  // namespace detail

// p - gamma(t), where gamma starts at 0 and runs once around the critical value
// v_j on an ellipse elongated along [0, v_j]; counterclockwise for sign = +1.
inline TwistLoop twist_loop(const std::vector<cd>& p, int j, int sign, const TwistOptions& opt = {}) {
  const int n = static_cast<int>(p.size()) - 1;
  require(n >= 2 && std::abs(p.back() - cd(1.0)) < 1e-14, ErrorKind::InvalidInput,
          "twist_loop needs a monic polynomial of degree >= 2");
  require(sign == 1 || sign == -1, ErrorKind::InvalidInput, "twist sign must be +-1");
  TwistLoop out;
  out.saddles = saddles_of(p);
  out.index = j;
  out.sign = sign;
  const int m = static_cast<int>(out.saddles.size());
  require(j >= 1 && j <= m, ErrorKind::InvalidInput, "critical value index out of range");
  double vs = 0;
  for (const auto& s : out.saddles) vs = std::max(vs, std::abs(s.value));
  const double sep_tol = 1e-9 * (1.0 + vs);
  for (int a = 0; a < m; ++a) {
    require(std::abs(out.saddles[a].value) > sep_tol, ErrorKind::InvalidInput,
            "base polynomial has a repeated root (critical value 0)");
    for (int b = a + 1; b < m; ++b) {
      require(std::abs(out.saddles[a].point - out.saddles[b].point) > sep_tol, ErrorKind::InvalidInput,
              "base polynomial has a degenerate critical point");
      require(std::abs(out.saddles[a].value - out.saddles[b].value) > sep_tol, ErrorKind::InvalidInput,
              "base polynomial has repeated critical values");
    }
  }
  const cd v = out.saddles[j - 1].value;
  const double L = std::abs(v);
  const cd vh = v / L;
  double rho = 0.5 * L;
  for (int i = 0; i < m; ++i)
    if (i != j - 1)
      rho = std::min(rho, opt.margin_fraction * detail::point_segment_distance(out.saddles[i].value, 0.0, v));
  if (!(rho > opt.min_margin * (1.0 + vs)))
    fail(ErrorKind::MarginFailure,
         "twist_loop: critical values too crowded around [0, v_j]; perturb the base polynomial first");
  const double A = 0.5 * (L + rho), B = rho;
  const double s = static_cast<double>(sign);
  // gamma(t) = vh (A (1 - cos t) - i s B sin t)
  TrigCurve gamma({{0, vh * A}, {1, vh * (-0.5 * A - 0.5 * s * B)}, {-1, vh * (-0.5 * A + 0.5 * s * B)}});
  std::vector<cd> samples(opt.check_grid);
  for (int k = 0; k < opt.check_grid; ++k) samples[k] = gamma(kTwoPi * k / opt.check_grid);
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    const cd w = out.saddles[i].value;
    for (const auto& z : samples) margin = std::min(margin, std::abs(z - w));
    const int wn = detail::winding(samples, w);
    require(wn == (i == j - 1 ? sign : 0), ErrorKind::MarginFailure,
            "twist_loop: the loop encircles the wrong critical values");
  }
  require(margin > opt.min_margin * (1.0 + vs), ErrorKind::MarginFailure,
          "twist_loop: loop passes too close to a critical value");
  out.margin = margin;
  std::vector<TrigCurve> a;
  for (int k = 0; k < n; ++k) a.push_back(TrigCurve::constant(p[k]));
  a[0] = TrigCurve::constant(p[0]) - gamma;
  out.loop = PolyLoop::closed_form(std::move(a));
  return out;
}

}  // namespace braidfib
