#pragma once

// Square (Rampichini) diagrams: the curves (arg v_j(t), t) on the torus
// [0, 2 pi]^2 with cactus labels, crossings and vertical tangencies, and the
// band words read along vertical lines.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "arg_analysis.hpp"
#include "braid_word.hpp"
#include "cactus.hpp"
#include "error.hpp"
#include "poly_loop.hpp"

namespace braidfib {

struct DiagramCrossing {
  double t = 0;
  double arg = 0;
  int a = 0, b = 0;  // 0-based strands
  int under = 0;     // the strand with the smaller |v| at the crossing
};

struct DiagramWrap {
  double t = 0;
  int strand = 0;
  int direction = 1;  // +1 when arg increases through 0
};

struct DiagramArc {
  int strand = 0;
  double t0 = 0, t1 = 0;
  int i = 1, j = 2;  // transposition (i j), i < j
  int sign = 1;      // monotonicity of arg v along the arc
};

struct SquareDiagram {
  int n = 0;
  CriticalData data;
  std::vector<std::vector<double>> lifted;  // lifted[j][k]: continuous arg v_j(t_k)
  std::vector<DiagramCrossing> crossings;
  std::vector<DiagramWrap> wraps;
  std::vector<ArgCriticalPoint> tangencies;
  std::vector<DiagramArc> arcs;
  bool rampichini = false;

  int curves() const { return data.count(); }

  const DiagramArc& arc_at(int strand, double t) const {
    const DiagramArc* best = nullptr;
    for (const auto& a : arcs)
      if (a.strand == strand && t >= a.t0 && t <= a.t1) {
        if (!best || std::min(t - a.t0, a.t1 - t) > std::min(t - best->t0, best->t1 - t)) best = &a;
      }
    require(best != nullptr, ErrorKind::Inconsistent, "no diagram arc covers the requested point");
    return *best;
  }
};

struct DiagramOptions {
  int N = 2048;
  ArgOptions arg{};
  CactusOptions cactus{};
  double event_tol = 1e-12;
};

namespace detail {

template <class F>
double bisect_sign(F&& f, double a, double b, double tol = 1e-13) {
  double fa = f(a);
  for (int k = 0; k < 200 && b - a > tol; ++k) {
    const double m = 0.5 * (a + b), fm = f(m);
    if ((fm > 0) == (fa > 0)) a = m, fa = fm;
    else b = m;
  }
  return 0.5 * (a + b);
}

inline std::vector<std::vector<double>> lift_args(const CriticalData& cdat) {
  const int N = cdat.N(), m = cdat.count();
  std::vector<std::vector<double>> th(m, std::vector<double>(N + 1));
  for (int j = 0; j < m; ++j) {
    th[j][0] = arg_2pi(cdat.values[0][j]);
    for (int k = 0; k < N; ++k) th[j][k + 1] = th[j][k] + std::arg(cdat.values[k + 1][j] / cdat.values[k][j]);
  }
  return th;
}

inline double circ_dist(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace detail

inline SquareDiagram square_diagram(const PolyLoop& g, const DiagramOptions& opt = {}) {
  SquareDiagram d;
  d.n = g.degree();
  d.data = critical_data(g, opt.N);
  const CriticalData& cdat = d.data;
  const int N = cdat.N(), m = cdat.count();
  d.tangencies = arg_critical_points(cdat, opt.arg);
  d.rampichini = d.tangencies.empty();
  d.lifted = detail::lift_args(cdat);
  const auto& th = d.lifted;
  const auto& T = cdat.saddles.t;
  auto fl = [](double x) { return static_cast<long>(std::floor(x / kTwoPi)); };

  for (int j = 0; j < m; ++j)
    for (int k = 0; k < N; ++k) {
      if (fl(th[j][k]) == fl(th[j][k + 1])) continue;
      const double t = detail::bisect_sign([&](double s) { return std::arg(cdat.value_at(s, j)); }, T[k], T[k + 1]);
      d.wraps.push_back({t, j, th[j][k + 1] > th[j][k] ? 1 : -1});
    }
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int k = 0; k < N; ++k) {
        if (fl(th[a][k] - th[b][k]) == fl(th[a][k + 1] - th[b][k + 1])) continue;
        const double t = detail::bisect_sign(
            [&](double s) { return std::arg(cdat.value_at(s, a) / cdat.value_at(s, b)); }, T[k], T[k + 1]);
        const cd va = cdat.value_at(t, a), vb = cdat.value_at(t, b);
        d.crossings.push_back({t, arg_2pi(va), a, b, std::abs(va) < std::abs(vb) ? a : b});
      }
  std::sort(d.crossings.begin(), d.crossings.end(), [](const auto& x, const auto& y) { return x.t < y.t; });
  std::sort(d.wraps.begin(), d.wraps.end(), [](const auto& x, const auto& y) { return x.t < y.t; });

  auto label_at = [&](double t, int j) -> std::pair<int, int> {
    const Cactus c = cactus_of(g.coeffs_at(t), opt.cactus);
    const auto& tau = c.tau_near(cdat.saddle_at(t, j));
    for (int i = 1; i <= d.n; ++i)
      if (tau(i) != i) return {i, tau(i)};
    fail(ErrorKind::Inconsistent, "cactus label is not a transposition");
  };
  // Tries a few interior sample points; none of them may coincide with an event.
  auto robust_label = [&](double t0, double t1, int j, const std::vector<double>& fracs, double* used) {
    for (double f : fracs) {
      try {
        const double t = t0 + f * (t1 - t0);
        auto l = label_at(t, j);
        if (used) *used = t;
        return l;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonGeneric && e.kind() != ErrorKind::TracingFailure) throw;
      }
    }
    fail(ErrorKind::Inconsistent, "no admissible label sample on a diagram arc");
  };

  for (int j = 0; j < m; ++j) {
    std::vector<double> cuts{0.0, kTwoPi};
    for (const auto& w : d.wraps)
      if (w.strand == j) cuts.push_back(w.t);
    for (const auto& c : d.crossings)
      if (c.a == j || c.b == j) cuts.push_back(c.t);
    for (const auto& p : d.tangencies)
      if (p.strand == j) cuts.push_back(p.t);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t q = 0; q + 1 < cuts.size(); ++q) {
      const double t0 = cuts[q], t1 = cuts[q + 1];
      if (t1 - t0 < opt.event_tol) continue;
      double tm = 0.5 * (t0 + t1);
      auto l1 = robust_label(t0, t1, j, {0.5, 0.45, 0.55, 0.4, 0.6}, &tm);
      auto l2 = robust_label(t0, t1, j, {0.25, 0.75, 0.2, 0.8, 0.3}, nullptr);
      if (l1 != l2) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "label propagation inconsistency on strand %d over [%.6f, %.6f]: (%d %d) vs (%d %d)",
                      j + 1, t0, t1, l1.first, l1.second, l2.first, l2.second);
        fail(ErrorKind::Inconsistent, buf);
      }
      DiagramArc arc;
      arc.strand = j;
      arc.t0 = t0;
      arc.t1 = t1;
      arc.i = std::min(l1.first, l1.second);
      arc.j = std::max(l1.first, l1.second);
      arc.sign = cdat.rate_at(tm, j) > 0 ? 1 : -1;
      d.arcs.push_back(arc);
    }
  }
  return d;
}

struct FiberWord {
  BraidWord word;  // band scheme
  std::vector<double> times;
  int euler_characteristic = 0;  // n - length
};

inline FiberWord fiber_band_word(const SquareDiagram& d, double phi, double tol = 1e-6) {
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0) phi += kTwoPi;
  auto critical = [&](double a) { return detail::circ_dist(a, phi) < tol; };
  if (critical(0.0)) fail(ErrorKind::CriticalPhi, "phi lies on the diagram edge; choose regular value");
  for (const auto& c : d.crossings)
    if (critical(c.arg)) fail(ErrorKind::CriticalPhi, "phi is a crossing argument; choose regular value");
  for (const auto& p : d.tangencies)
    if (critical(p.critical_arg)) fail(ErrorKind::CriticalPhi, "phi is a critical argument; choose regular value");
  const auto& cdat = d.data;
  const auto& T = cdat.saddles.t;
  const int N = cdat.N();
  std::vector<std::pair<double, Letter>> hits;
  const cd rot = std::polar(1.0, -phi);
  for (int j = 0; j < cdat.count(); ++j)
    for (int k = 0; k < N; ++k) {
      const auto f0 = std::floor((d.lifted[j][k] - phi) / kTwoPi), f1 = std::floor((d.lifted[j][k + 1] - phi) / kTwoPi);
      if (f0 == f1) continue;
      const double t =
          detail::bisect_sign([&](double s) { return std::arg(cdat.value_at(s, j) * rot); }, T[k], T[k + 1]);
      const auto& arc = d.arc_at(j, t);
      const int sign = cdat.rate_at(t, j) > 0 ? 1 : -1;
      hits.emplace_back(t, Letter::band(arc.i, arc.j, sign));
    }
  std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  FiberWord out;
  out.word.strands = d.n;
  out.word.scheme = Scheme::Band;
  for (const auto& [t, l] : hits) {
    out.times.push_back(t);
    out.word.letters.push_back(l);
  }
  out.euler_characteristic = d.n - out.word.length();
  return out;
}

// 800 x 800 px, arg to the right, t upward.
inline std::string diagram_svg(const SquareDiagram& d) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
  const double S = 800.0;
  auto X = [&](double a) { return S * a / kTwoPi; };
  auto Y = [&](double t) { return S - S * t / kTwoPi; };
  std::string out;
  char buf[256];
  auto put = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out += buf;
  };
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";
  const auto& T = d.data.saddles.t;
  for (int j = 0; j < d.curves(); ++j) {
    const char* col = palette[j % 8];
    std::string pts;
    auto flush = [&] {
      if (pts.empty()) return;
      put("<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"2\" points=\"", col);
      out += pts;
      out += "\"/>\n";
      pts.clear();
    };
    double prev = -1;
    for (std::size_t k = 0; k < T.size(); ++k) {
      double a = std::fmod(d.lifted[j][k], kTwoPi);
      if (a < 0) a += kTwoPi;
      if (prev >= 0 && std::abs(a - prev) > kPi) flush();
      std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", pts.empty() ? "" : " ", X(a), Y(T[k]));
      pts += buf;
      prev = a;
    }
    flush();
  }
  for (const auto& c : d.crossings)
    put("<rect x=\"%.3f\" y=\"%.3f\" width=\"6\" height=\"6\" fill=\"none\" stroke=\"black\"/>\n", X(c.arg) - 3,
        Y(c.t) - 3);
  for (const auto& p : d.tangencies)
    put("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"5\" fill=\"black\"/>\n", X(p.critical_arg), Y(p.t));
  for (const auto& a : d.arcs) {
    const double tm = 0.5 * (a.t0 + a.t1);
    const auto& th = d.lifted[a.strand];
    const std::size_t k = std::min(th.size() - 1, static_cast<std::size_t>(std::lround(tm / kTwoPi * (th.size() - 1))));
    double x = std::fmod(th[k], kTwoPi);
    if (x < 0) x += kTwoPi;
    put("<text x=\"%.3f\" y=\"%.3f\" font-size=\"12\" font-family=\"monospace\">a%d,%d%s</text>\n", X(x) + 4,
        Y(tm) - 4, a.i, a.j, a.sign < 0 ? "^-1" : "");
  }
  out += "</svg>\n";
  return out;
}

}  // namespace braidfib
