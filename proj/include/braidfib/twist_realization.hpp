#pragma once

// Braids realized by concatenated twist loops p - gamma_j(t) on a base
// polynomial p, and the deformed version in which only the twisted critical
// value travels around 0 while the others creep slowly, lifted back to a loop
// of polynomials through the map (critical values, constant term).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "braid_word.hpp"
#include "cactus.hpp"
#include "error.hpp"
#include "poly_loop.hpp"
#include "roots.hpp"

namespace braidfib {

struct TwistLetter {
  int saddle = 1;  // critical value index, 1-based in arg order
  int sign = 1;
};

struct TwistRealization {
  std::vector<cd> base;
  std::vector<Saddle> saddles;
  PlaneTree tree;             // roots of the base, one edge per singular leaf
  std::vector<TwistLetter> letters;
  BraidWord word;             // tree-edge scheme: generator k is the edge of saddle k
  PolyLoop loop;              // concatenation of the twist loops
  std::vector<TrigCurve> gammas;  // gamma of each letter, local parameter in [0, 2 pi]
};

inline TwistRealization twist_realization(const std::vector<cd>& p, const std::vector<TwistLetter>& letters,
                                          const TwistOptions& opt = {}) {
  require(!letters.empty(), ErrorKind::InvalidInput, "twist word must be nonempty");
  TwistRealization r;
  r.base = p;
  r.saddles = saddles_of(p);
  r.tree = embedded_tree_of(p);
  r.letters = letters;
  r.word.strands = static_cast<int>(p.size()) - 1;
  r.word.scheme = Scheme::TreeEdge;
  r.word.tree = r.tree;
  std::vector<PolyLoop> pieces;
  for (const auto& l : letters) {
    r.word.letters.push_back(Letter::artin(l.saddle, l.sign));
    auto tw = twist_loop(p, l.saddle, l.sign, opt);
    r.gammas.push_back(TrigCurve::constant(p[0]) - tw.loop.closed_coeffs()[0]);
    pieces.push_back(std::move(tw.loop));
  }
  r.word.validate();
  r.loop = pieces.size() == 1 ? pieces.front() : concatenate(pieces);
  return r;
}

// p(u - w) for the smallest real w in 1, 2, 4, ... with |p(-w)| > 4 (1 + max |v|).
// Translation keeps the critical values and moves the constant term away from
// every twist ellipse, which the deformation below needs.
inline std::vector<cd> far_constant(std::vector<cd> p) {
  double vmax = 0;
  for (const auto& s : saddles_of(p)) vmax = std::max(vmax, std::abs(s.value));
  const double want = 4.0 * (1.0 + vmax);
  if (std::abs(p[0]) > want) return p;
  for (double w = 1; w < 1e6; w *= 2) {
    if (std::abs(poly_eval(p, cd(-w))) > want) {
      const int n = static_cast<int>(p.size()) - 1;
      std::vector<cd> out(n + 1);
      for (int m = 0; m <= n; ++m) {
        // (u - w)^m = sum_k C(m,k) u^k (-w)^{m-k}
        double c = 1;
        for (int k = m; k >= 0; --k) {
          out[k] += p[m] * c * std::pow(-w, m - k);
          c = c * k / (m - k + 1);
        }
      }
      out[n] = 1.0;
      return out;
    }
  }
  fail(ErrorKind::MarginFailure, "far_constant: no shift found");
}

// Base polynomial prod (u - e^{i theta} x_k) + i y with real, unevenly spaced
// x_k and y a fixed fraction of the smallest |critical value|. The singular
// leaves join neighbours, so tree edge k joins the k-th and (k+1)-th root from
// the left. The small tilt theta matters: with theta = 0 the twisted
// polynomials have real coefficients whenever the moving constant crosses
// Im = y, and conjugate root pairs then tie in real part simultaneously.
inline std::vector<cd> artin_base(int n, double y_fraction = 0.6, double theta = 0.05) {
  require(n >= 2, ErrorKind::InvalidInput, "artin_base needs n >= 2");
  std::vector<cd> roots;
  const cd tilt = std::polar(1.0, theta);
  for (int k = 0; k < n; ++k) roots.push_back(tilt * (k + 0.15 * k * k - 0.5 * (n - 1)));
  auto p = poly_from_roots(roots);
  double vmin = std::numeric_limits<double>::infinity();
  for (const auto& c : find_roots(poly_derivative(p)).roots) vmin = std::min(vmin, std::abs(poly_eval(p, c)));
  p[0] += cd(0.0, y_fraction * vmin);
  return far_constant(p);
}

// Maps sigma_k^{+-1} to the saddle whose leaf joins the k-th and (k+1)-th root
// in real order; throws if the leaves of p do not form that path.
inline std::vector<TwistLetter> artin_to_twist(const std::vector<cd>& p, const BraidWord& w) {
  require(w.scheme == Scheme::Artin, ErrorKind::InvalidInput, "artin_to_twist needs an Artin word");
  const Cactus c = cactus_of(p);
  const int n = c.n;
  require(w.strands == n, ErrorKind::InvalidInput, "word and base polynomial disagree on the strand count");
  std::vector<int> rank(n);
  {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return c.roots[a].real() < c.roots[b].real(); });
    for (int k = 0; k < n; ++k) rank[order[k]] = k + 1;
  }
  std::vector<int> saddle_for(n, 0);
  for (std::size_t s = 0; s < c.root_edges.size(); ++s) {
    const int a = rank[c.root_edges[s].first], b = rank[c.root_edges[s].second];
    if (std::abs(a - b) != 1)
      fail(ErrorKind::TracingFailure, "singular leaves of the base do not form a left-to-right path");
    saddle_for[std::min(a, b)] = static_cast<int>(s) + 1;
  }
  std::vector<TwistLetter> out;
  for (const auto& l : w.letters) out.push_back({saddle_for[l.generator], l.sign});
  return out;
}

struct LiftOptions {
  double active_fraction = 0.8;  // of each letter interval; the rest is a pause
  double eta_fraction = 0.02;    // creep rate relative to the slowest twist rate
  int samples = 4096;
  int harmonics = 512;
  double fit_tol = 1e-9;
};

struct LiftedLoop {
  PolyLoop loop;
  double eta = 0;        // creep rate of resting critical values
  double fit_error = 0;  // max coefficient misfit of the Fourier representation
  int harmonics = 0;
};

namespace detail {

// Smooth ramp on [0, 2 pi] with sigma' = (2/3)(1 - cos s)^2, flat to third order at both ends.
inline double ramp(double s) { return s - (4.0 / 3.0) * std::sin(s) + (1.0 / 6.0) * std::sin(2 * s); }
inline double ramp_d(double s) { return (2.0 / 3.0) * (1 - std::cos(s)) * (1 - std::cos(s)); }

// p with p' = n prod (u - c_l) and p(0) = a0, ascending coefficients.
inline std::vector<cd> poly_from_critical(const std::vector<cd>& c, cd a0) {
  const int n = static_cast<int>(c.size()) + 1;
  auto d = poly_from_roots(c);  // monic degree n-1
  std::vector<cd> p(n + 1);
  p[0] = a0;
  for (int m = 0; m < n; ++m) p[m + 1] = static_cast<double>(n) * d[m] / static_cast<double>(m + 1);
  return p;
}

// Newton on P_c(c_i) + a0 = v_i for the critical points c.
inline bool lift_step(std::vector<cd>& c, const std::vector<cd>& v, cd a0) {
  const int m = static_cast<int>(c.size());
  const int n = m + 1;
  double scale = 1 + std::abs(a0);
  for (const auto& z : v) scale = std::max(scale, std::abs(z));
  for (int it = 0; it < 30; ++it) {
    const auto p = poly_from_critical(c, a0);
    std::vector<cd> F(m);
    double res = 0;
    for (int i = 0; i < m; ++i) {
      F[i] = poly_eval(p, c[i]) - v[i];
      res = std::max(res, std::abs(F[i]));
    }
    if (res <= 1e-14 * scale) return true;
    // J_im = -n int_0^{c_i} prod_{l != m} (w - c_l) dw
    std::vector<std::vector<cd>> J(m, std::vector<cd>(m));
    for (int q = 0; q < m; ++q) {
      std::vector<cd> others;
      for (int l = 0; l < m; ++l)
        if (l != q) others.push_back(c[l]);
      const auto d = poly_from_roots(others);
      std::vector<cd> integ(d.size() + 1);
      for (std::size_t k = 0; k < d.size(); ++k) integ[k + 1] = d[k] / static_cast<double>(k + 1);
      for (int i = 0; i < m; ++i) J[i][q] = -static_cast<double>(n) * poly_eval(integ, c[i]);
    }
    // Gaussian elimination with partial pivoting
    std::vector<cd> rhs = F;
    for (int col = 0; col < m; ++col) {
      int piv = col;
      for (int r = col + 1; r < m; ++r)
        if (std::abs(J[r][col]) > std::abs(J[piv][col])) piv = r;
      if (std::abs(J[piv][col]) < 1e-300) return false;
      std::swap(J[piv], J[col]);
      std::swap(rhs[piv], rhs[col]);
      for (int r = col + 1; r < m; ++r) {
        const cd f = J[r][col] / J[col][col];
        for (int k = col; k < m; ++k) J[r][k] -= f * J[col][k];
        rhs[r] -= f * rhs[col];
      }
    }
    std::vector<cd> dx(m);
    for (int r = m - 1; r >= 0; --r) {
      cd s = rhs[r];
      for (int k = r + 1; k < m; ++k) s -= J[r][k] * dx[k];
      dx[r] = s / J[r][r];
    }
    for (int i = 0; i < m; ++i) c[i] -= dx[i];
  }
  return false;
}

}  // namespace detail

// Critical-value loop of the deformation: during letter k only v_{j_k} moves once
// around 0 (on the reflected twist ellipse, reparametrized to start and stop
// smoothly); every value also creeps by a small rotation psi_i(t) whose rate has
// the sign of the nearest twists, so arg v_i changes direction only between
// consecutive twists of opposite sign, and twice in total for untouched values.
struct DeformedValues {
  std::vector<cd> base_values;
  std::vector<std::vector<std::pair<double, double>>> active;  // per saddle: [a, b] intervals
  std::vector<std::vector<int>> active_sign;
  std::vector<std::vector<int>> active_letter;
  std::vector<TrigCurve> gammas;
  std::vector<double> kappa;
  double eta = 0;
  double L = 0;  // letter interval length
  double alpha = 0.8;

  double rho(int i, double t) const {
    const auto& I = active[i];
    if (I.empty()) return eta * std::cos(t);
    for (std::size_t k = 0; k < I.size(); ++k) {
      const auto [a, b] = I[k];
      if (t >= a && t <= b) {
        const double s = kTwoPi * (t - a) / (b - a);
        return active_sign[i][k] * eta - kappa[i] * detail::ramp_d(s);
      }
    }
    // pause between active interval k and the next one (cyclically)
    for (std::size_t k = 0; k < I.size(); ++k) {
      const double b = I[k].second;
      const std::size_t nk = (k + 1) % I.size();
      double a2 = I[nk].first;
      if (nk <= k) a2 += kTwoPi;
      double tt = t;
      if (tt < b) tt += kTwoPi;
      if (tt >= b && tt <= a2) {
        const double x = (tt - b) / (a2 - b);
        const double w = detail::ramp(kTwoPi * x) / kTwoPi;
        return eta * (active_sign[i][k] + (active_sign[i][nk] - active_sign[i][k]) * w);
      }
    }
    return 0;
  }

  cd value(int i, double t, double psi_i) const {
    cd v = base_values[i];
    for (std::size_t k = 0; k < active[i].size(); ++k) {
      const auto [a, b] = active[i][k];
      if (t >= a && t <= b) {
        const double s = kTwoPi * (t - a) / (b - a);
        v -= gammas[active_letter[i][k]](detail::ramp(s));
      }
    }
    return v * std::polar(1.0, psi_i);
  }
};

inline DeformedValues deformed_values(const TwistRealization& r, const LiftOptions& opt = {}) {
  DeformedValues dv;
  const int m = static_cast<int>(r.saddles.size());
  const int ell = static_cast<int>(r.letters.size());
  dv.L = kTwoPi / ell;
  dv.alpha = opt.active_fraction;
  dv.gammas = r.gammas;
  for (const auto& s : r.saddles) dv.base_values.push_back(s.value);
  dv.active.assign(m, {});
  dv.active_sign.assign(m, {});
  dv.active_letter.assign(m, {});
  for (int k = 0; k < ell; ++k) {
    const int i = r.letters[k].saddle - 1;
    dv.active[i].push_back({k * dv.L, k * dv.L + dv.alpha * dv.L});
    dv.active_sign[i].push_back(r.letters[k].sign);
    dv.active_letter[i].push_back(k);
  }
  // slowest angular speed of the twisted value along its reflected ellipse, per unit t
  double mmin = std::numeric_limits<double>::infinity();
  double vmax = 0, gap = std::numeric_limits<double>::infinity();
  for (int a = 0; a < m; ++a) {
    vmax = std::max(vmax, std::abs(dv.base_values[a]));
    for (int b = a + 1; b < m; ++b) gap = std::min(gap, std::abs(dv.base_values[a] - dv.base_values[b]));
  }
  for (int k = 0; k < ell; ++k) {
    const int i = r.letters[k].saddle - 1;
    const auto& g = r.gammas[k];
    for (int q = 0; q < 720; ++q) {
      // away from the flat ends the ramp speeds up, so measure d arg / d sigma
      const double sg = kTwoPi * (q + 0.5) / 720;
      const cd z = dv.base_values[i] - g(sg), dz = -g.derivative(sg);
      mmin = std::min(mmin, std::abs(std::imag(dz / z)));
    }
    // other values and the constant term must stay outside the reflected ellipse
    std::vector<cd> ring(720);
    for (int q = 0; q < 720; ++q) ring[q] = dv.base_values[i] - g(kTwoPi * q / 720);
    for (int a = 0; a < m; ++a)
      if (a != i && detail::winding(ring, dv.base_values[a]) != 0)
        fail(ErrorKind::MarginFailure, "deformed twist: a resting critical value lies inside the twist ellipse");
    if (detail::winding(ring, r.base[0]) != 0)
      fail(ErrorKind::MarginFailure, "deformed twist: the constant term lies inside the twist ellipse");
  }
  if (m == 0) mmin = 1;
  // creep small against both the twist speed and the spacing of the values
  dv.eta = opt.eta_fraction * std::min(mmin, std::min(1.0, gap / (1.0 + vmax)));
  dv.kappa.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const auto& I = dv.active[i];
    if (I.empty()) continue;
    // integral of rho over the loop must vanish so that psi is periodic
    double act = 0, total_len = 0, pause = 0;
    for (std::size_t k = 0; k < I.size(); ++k) {
      const double len = I[k].second - I[k].first;
      act += dv.active_sign[i][k] * len;
      total_len += len;
      const std::size_t nk = (k + 1) % I.size();
      double a2 = I[nk].first;
      if (nk <= k) a2 += kTwoPi;
      pause += (a2 - I[k].second) * 0.5 * (dv.active_sign[i][k] + dv.active_sign[i][nk]);
    }
    dv.kappa[i] = dv.eta * (act + pause) / total_len;
  }
  return dv;
}

// Lifts the deformed critical-value loop (with fixed constant term) to a loop
// of polynomials starting at the base, then fits it with a Fourier series.
inline LiftedLoop lift_deformed(const TwistRealization& r, const LiftOptions& opt = {}) {
  const DeformedValues dv = deformed_values(r, opt);
  const int n = static_cast<int>(r.base.size()) - 1;
  const int m = n - 1;
  const int M = opt.samples;
  const cd a0 = r.base[0];
  std::vector<std::vector<cd>> coeffs(M + 1);
  std::vector<cd> c(m);
  for (int i = 0; i < m; ++i) c[i] = r.saddles[i].point;
  // psi on the sample grid by cumulative Simpson over each cell
  std::vector<std::vector<double>> psi(m, std::vector<double>(M + 1, 0.0));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < M; ++k) {
      const double t0 = kTwoPi * k / M, t1 = kTwoPi * (k + 1) / M;
      double s = 0;
      const int Q = 8;
      const double h = (t1 - t0) / Q;
      for (int q = 0; q <= Q; ++q) s += (q == 0 || q == Q ? 1.0 : (q % 2 ? 4.0 : 2.0)) * dv.rho(i, t0 + q * h);
      psi[i][k + 1] = psi[i][k] + s * h / 3.0;
    }
  for (int i = 0; i < m; ++i)
    if (std::abs(psi[i][M]) > 1e-9)
      fail(ErrorKind::Inconsistent, "deformed twist: creep does not close up");
  auto values_at = [&](double t, const std::vector<double>& ps) {
    std::vector<cd> v(m);
    for (int i = 0; i < m; ++i) v[i] = dv.value(i, t, ps[i]);
    return v;
  };
  coeffs[0] = detail::poly_from_critical(c, a0);
  for (int k = 0; k < M; ++k) {
    const double t0 = kTwoPi * k / M, t1 = kTwoPi * (k + 1) / M;
    // subdivide on Newton failure; psi interpolated linearly inside a cell
    std::vector<double> p0(m), p1(m);
    for (int i = 0; i < m; ++i) p0[i] = psi[i][k], p1[i] = psi[i][k + 1];
    int parts = 1;
    for (;;) {
      auto trial = c;
      bool ok = true;
      for (int q = 1; q <= parts && ok; ++q) {
        const double f = static_cast<double>(q) / parts;
        std::vector<double> ps(m);
        for (int i = 0; i < m; ++i) ps[i] = p0[i] + f * (p1[i] - p0[i]);
        const auto prev = trial;
        ok = detail::lift_step(trial, values_at(t0 + f * (t1 - t0), ps), a0);
        double jump = 0, sep = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
          jump = std::max(jump, std::abs(trial[i] - prev[i]));
          for (int l = i + 1; l < m; ++l) sep = std::min(sep, std::abs(prev[i] - prev[l]));
        }
        if (m > 1 && jump > 0.25 * sep) ok = false;
      }
      if (ok) {
        c = trial;
        break;
      }
      parts *= 2;
      if (parts > 1 << 12) fail(ErrorKind::NonConvergence, "deformed twist: lifting did not converge");
    }
    coeffs[k + 1] = detail::poly_from_critical(c, a0);
  }
  double close = 0;
  for (int q = 0; q <= n; ++q) close = std::max(close, std::abs(coeffs[M][q] - coeffs[0][q]));
  if (close > 1e-8 * (1 + std::abs(a0)))
    fail(ErrorKind::Inconsistent, "deformed twist: the lift is not a closed loop");
  LiftedLoop out;
  out.eta = dv.eta;
  for (int D = std::min(opt.harmonics, M / 2 - 1);; D = std::min(2 * D, M / 2 - 1)) {
    std::vector<TrigCurve> a;
    a.push_back(TrigCurve::constant(a0));
    for (int q = 1; q < n; ++q)
      a.push_back(fourier_project([&](double t) {
        const int k = static_cast<int>(std::lround(t / kTwoPi * M)) % M;
        return coeffs[k][q];
      }, 1, D, M));
    // the far tail costs evaluation time without moving the fit
    for (int q = 1; q < n; ++q) a[q].prune_budget(0.1 * opt.fit_tol);
    double err = 0;
    for (int q = 1; q < n; ++q)
      for (int k = 0; k < M; ++k) err = std::max(err, std::abs(a[q](kTwoPi * k / M) - coeffs[k][q]));
    out.fit_error = err;
    out.harmonics = D;
    out.loop = PolyLoop::closed_form(std::move(a));
    if (err <= opt.fit_tol || D >= M / 2 - 1) break;
  }
  return out;
}

}  // namespace braidfib
