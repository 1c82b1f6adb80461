#pragma once

// Semiholomorphic mixed polynomials f(u, v, vbar) built from loops of monic
// polynomials by f(u, r e^{it}) = r^{kn} g_t(u / r^k), their Newton boundary and
// the zero cone of f_u.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "poly_loop.hpp"
#include "roots.hpp"

namespace braidfib {

enum class Symmetry { Even, Odd, None };

inline const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Even: return "even";
    case Symmetry::Odd: return "odd";
    default: return "none";
  }
}

// Exponents (i, k, l) of u^i v^k vbar^l.
using Monomial = std::array<int, 3>;

struct MixedPolynomial {
  std::map<Monomial, cd> terms;
  double pruned = 0;  // summed modulus of coefficients dropped during construction

  bool empty() const { return terms.empty(); }

  cd operator()(cd u, cd v) const {
    cd s{};
    const cd vb = std::conj(v);
    for (const auto& [e, c] : terms) s += c * std::pow(u, e[0]) * std::pow(v, e[1]) * std::pow(vb, e[2]);
    return s;
  }

  // Sum of |terms|, the natural scale for residuals.
  double magnitude(cd u, cd v) const {
    double s = 0;
    const double au = std::abs(u), av = std::abs(v);
    for (const auto& [e, c] : terms) s += std::abs(c) * std::pow(au, e[0]) * std::pow(av, e[1] + e[2]);
    return s;
  }

  int u_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e[0]);
    return d;
  }

  // Coefficients in u (ascending) at a fixed v.
  std::vector<cd> u_coeffs(cd v) const {
    std::vector<cd> a(u_degree() + 1);
    const cd vb = std::conj(v);
    for (const auto& [e, c] : terms) a[e[0]] += c * std::pow(v, e[1]) * std::pow(vb, e[2]);
    return a;
  }

  MixedPolynomial& operator+=(const MixedPolynomial& o) {
    for (const auto& [e, c] : o.terms) terms[e] += c;
    for (auto it = terms.begin(); it != terms.end();) it = it->second == cd{} ? terms.erase(it) : std::next(it);
    return *this;
  }

  std::string to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    char buf[96];
    bool first = true;
    // highest u power first, then by v exponents
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      const auto& [e, c] = *it;
      const bool neg = c.imag() == 0 && c.real() < 0;
      if (!first) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      first = false;
      if (c.imag() == 0) std::snprintf(buf, sizeof buf, "%.6g", std::abs(c.real()));
      else std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", c.real(), c.imag());
      out += buf;
      auto factor = [&](const char* name, int p) {
        if (p == 0) return;
        out += "·";
        out += name;
        if (p > 1) out += "^" + std::to_string(p);
      };
      factor("u", e[0]);
      factor("v", e[1]);
      factor("v̄", e[2]);
    }
    return out;
  }
};

inline MixedPolynomial derivative_u(const MixedPolynomial& f) {
  MixedPolynomial d;
  for (const auto& [e, c] : f.terms)
    if (e[0] > 0) d.terms[{e[0] - 1, e[1], e[2]}] += static_cast<double>(e[0]) * c;
  return d;
}

namespace detail {

// Integer Fourier degrees of a coefficient curve in units of e^{it}; false if a
// degree is not an integer multiple of the denominator.
inline bool integer_degrees(const TrigCurve& c, std::vector<std::pair<int, cd>>& out) {
  out.clear();
  const TrigCurve r = c.reduced();
  for (const auto& [d, z] : r.coeffs()) {
    if (d % r.denominator() != 0) return false;
    out.emplace_back(d / r.denominator(), z);
  }
  return true;
}

}  // namespace detail

// Decided on the Fourier data. Even: only even degrees. Odd: the degree parity
// of a_m equals the parity of n - m for every m.
inline Symmetry check_symmetry(const PolyLoop& g) {
  const auto& a = g.closed_coeffs();
  const int n = g.degree();
  bool even = true, odd = true;
  std::vector<std::pair<int, cd>> terms;
  for (int m = 0; m < n; ++m) {
    if (!detail::integer_degrees(a[m], terms)) return Symmetry::None;
    for (const auto& [d, c] : terms) {
      const int par = ((d % 2) + 2) % 2;
      if (par != 0) even = false;
      if (par != (n - m) % 2) odd = false;
    }
  }
  if (even) return Symmetry::Even;
  return odd ? Symmetry::Odd : Symmetry::None;
}

// Which Fourier terms break each symmetry, as (m, d) for a_m containing e^{idt}.
struct SymmetryDiagnosis {
  Symmetry symmetry = Symmetry::None;
  std::vector<int> fractional;                   // m whose a_m has non-integer frequencies
  std::vector<std::array<int, 2>> breaks_even;   // odd d
  std::vector<std::array<int, 2>> breaks_odd;    // parity(d) != parity(n - m)
};

inline SymmetryDiagnosis diagnose_symmetry(const PolyLoop& g) {
  SymmetryDiagnosis out;
  out.symmetry = check_symmetry(g);
  const auto& a = g.closed_coeffs();
  const int n = g.degree();
  std::vector<std::pair<int, cd>> terms;
  for (int m = 0; m < n; ++m) {
    if (!detail::integer_degrees(a[m], terms)) {
      out.fractional.push_back(m);
      continue;
    }
    for (const auto& [d, c] : terms) {
      const int par = ((d % 2) + 2) % 2;
      if (par != 0) out.breaks_even.push_back({m, d});
      if (par != (n - m) % 2) out.breaks_odd.push_back({m, d});
    }
  }
  return out;
}

// True if u^m r^{k(n-m)} e^{idt} is a monomial in u, v, vbar for every term.
inline bool admissible_k(const PolyLoop& g, int k) {
  if (k < 1) return false;
  const auto& a = g.closed_coeffs();
  const int n = g.degree();
  std::vector<std::pair<int, cd>> terms;
  for (int m = 0; m < n; ++m) {
    if (!detail::integer_degrees(a[m], terms)) return false;
    for (const auto& [d, c] : terms) {
      const int w = k * (n - m);
      if (w < std::abs(d) || ((w - d) % 2 + 2) % 2 != 0) return false;
    }
  }
  return true;
}

inline int minimal_k(const PolyLoop& g) {
  const Symmetry s = check_symmetry(g);
  if (s == Symmetry::None)
    fail(ErrorKind::SymmetryFailure,
         "loop has neither symmetry g(t+pi) = g(t) nor the odd parity rule; no polynomial f exists");
  int dmax = 0;
  std::vector<std::pair<int, cd>> terms;
  for (const auto& c : g.closed_coeffs()) {
    detail::integer_degrees(c, terms);
    for (const auto& [d, z] : terms) dmax = std::max(dmax, std::abs(d));
  }
  // Beyond dmax + 2 only the parity can fail, and it repeats with period 2.
  for (int k = 1; k <= dmax + 2; ++k)
    if (admissible_k(g, k)) return k;
  fail(ErrorKind::SymmetryFailure, "no admissible exponent k satisfies the parity conditions");
}

inline MixedPolynomial semiholomorphic(const PolyLoop& g, int k, double prune_tol = 1e-14) {
  if (!admissible_k(g, k))
    fail(ErrorKind::SymmetryFailure, "k=" + std::to_string(k) + " is not admissible for this loop");
  const auto& a = g.closed_coeffs();
  const int n = g.degree();
  MixedPolynomial f;
  f.terms[{n, 0, 0}] = 1.0;
  std::vector<std::pair<int, cd>> terms;
  for (int m = 0; m < n; ++m) {
    detail::integer_degrees(a[m], terms);
    for (const auto& [d, c] : terms) {
      const int w = k * (n - m);
      if (std::abs(c) < prune_tol) {
        f.pruned += std::abs(c);
        continue;
      }
      f.terms[{m, (w + d) / 2, (w - d) / 2}] += c;
    }
  }
  return f;
}

// Relative residual of f(u, r e^{it}) against r^{kn} g_t(u / r^k).
inline double semiholomorphic_residual(const MixedPolynomial& f, const PolyLoop& g, int k, cd u, double r, double t) {
  const int n = g.degree();
  const cd lhs = f(u, std::polar(r, t));
  const auto a = g.coeffs_at(t);
  // r^{kn} g(u / r^k) = sum a_m u^m r^{k(n-m)}, which stays finite as r -> 0
  cd rhs{};
  double scale = 0;
  for (int m = 0; m <= n; ++m) {
    const cd term = a[m] * std::pow(u, m) * std::pow(r, k * (n - m));
    rhs += term;
    scale += std::abs(term);
  }
  return std::abs(lhs - rhs) / std::max(scale, std::numeric_limits<double>::min());
}

struct NewtonData {
  std::vector<std::array<int, 2>> support;   // (mu, nu), sorted
  std::vector<std::array<int, 2>> vertices;  // of the Newton boundary, sorted by mu
  std::vector<std::array<std::array<int, 2>, 2>> edges;
  std::vector<std::array<int, 2>> above;     // support points strictly off the boundary
  bool convenient = false;
  bool radially_weighted_homogeneous = false;
};

inline NewtonData newton_data(const MixedPolynomial& f) {
  require(!f.empty(), ErrorKind::InvalidInput, "newton_data needs a nonzero polynomial");
  NewtonData nd;
  for (const auto& [e, c] : f.terms) nd.support.push_back({e[0], e[1] + e[2]});
  std::sort(nd.support.begin(), nd.support.end());
  nd.support.erase(std::unique(nd.support.begin(), nd.support.end()), nd.support.end());
  const auto& S = nd.support;
  auto cross = [](std::array<int, 2> o, std::array<int, 2> a, std::array<int, 2> b) {
    return static_cast<long long>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<long long>(a[1] - o[1]) * (b[0] - o[0]);
  };
  // Lower hull (monotone chain), then keep the part with negative slope.
  std::vector<std::array<int, 2>> hull;
  for (const auto& p : S) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  // first point: smallest mu, smallest nu among those (S is sorted that way)
  std::vector<std::array<int, 2>> verts{hull.front()};
  for (std::size_t q = 1; q < hull.size(); ++q) {
    if (hull[q][1] >= verts.back()[1]) break;
    verts.push_back(hull[q]);
  }
  nd.vertices = verts;
  for (std::size_t q = 0; q + 1 < verts.size(); ++q) nd.edges.push_back({verts[q], verts[q + 1]});
  // a point lies on the boundary if it is a vertex or sits on a compact edge
  for (const auto& p : S) {
    bool on = std::find(verts.begin(), verts.end(), p) != verts.end();
    for (const auto& e : nd.edges)
      if (cross(e[0], e[1], p) == 0 && p[0] >= e[0][0] && p[0] <= e[1][0]) on = true;
    if (!on) nd.above.push_back(p);
  }
  bool on_mu = false, on_nu = false;
  for (const auto& p : S) {
    if (p[0] == 0) on_nu = true;
    if (p[1] == 0) on_mu = true;
  }
  nd.convenient = on_mu && on_nu;
  if (S.size() >= 2) {
    const auto a = S.front(), b = S.back();
    bool line = true;
    for (const auto& p : S) line = line && cross(a, b, p) == 0;
    // sorted by mu, so the slope is negative iff nu strictly decreases end to end
    nd.radially_weighted_homogeneous = line && b[0] > a[0] && b[1] < a[1];
  }
  return nd;
}

struct ConeReport {
  double max_mismatch = 0;  // relative to r^k (1 + max |c_j|)
  double worst_r = 0, worst_t = 0;
  int samples = 0;
  double tolerance = 0;
  bool passed = false;
};

namespace detail {

// Smallest max-distance pairing of two equally sized point sets.
inline double matched_distance(std::vector<cd> a, const std::vector<cd>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  if (a.size() <= 7) {
    do {
      double m = 0;
      for (std::size_t q = 0; q < a.size(); ++q) m = std::max(m, std::abs(a[q] - b[perm[q]]));
      best = std::min(best, m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<bool> used(b.size(), false);
  double m = 0;
  for (const auto& z : a) {
    int j = -1;
    for (std::size_t q = 0; q < b.size(); ++q)
      if (!used[q] && (j < 0 || std::abs(z - b[q]) < std::abs(z - b[j]))) j = static_cast<int>(q);
    used[j] = true;
    m = std::max(m, std::abs(z - b[j]));
  }
  return m;
}

}  // namespace detail

// Solves f_u(., r e^{it}) = 0 and compares with r^k c_j(t), c_j the critical
// points of g_t.
inline ConeReport verify_cone(const MixedPolynomial& f, const PolyLoop& g, int k, const std::vector<double>& radii,
                              int t_samples = 64, double tol = 1e-6) {
  require(t_samples >= 1 && !radii.empty(), ErrorKind::InvalidInput, "verify_cone needs samples");
  const MixedPolynomial fu = derivative_u(f);
  ConeReport rep;
  rep.tolerance = tol;
  const int total = static_cast<int>(radii.size()) * t_samples;
  std::vector<double> mism(total, 0);
  parallel_for(total, [&](std::size_t s) {
    const double r = radii[s / t_samples];
    const double t = kTwoPi * static_cast<double>(s % t_samples) / t_samples;
    const auto a = g.coeffs_at(t);
    std::vector<cd> c = a.size() > 2 ? find_roots(poly_derivative(a)).roots : std::vector<cd>{};
    double cmax = 0;
    for (auto& z : c) {
      cmax = std::max(cmax, std::abs(z));
      z *= std::pow(r, k);
    }
    const auto b = fu.u_coeffs(std::polar(r, t));
    const std::vector<cd> got = b.size() > 1 ? find_roots(b).roots : std::vector<cd>{};
    mism[s] = detail::matched_distance(got, c) / (std::pow(r, k) * (1.0 + cmax));
  });
  for (int s = 0; s < total; ++s)
    if (mism[s] > rep.max_mismatch || s == 0) {
      rep.max_mismatch = mism[s];
      rep.worst_r = radii[s / t_samples];
      rep.worst_t = kTwoPi * static_cast<double>(s % t_samples) / t_samples;
    }
  rep.samples = total;
  rep.passed = rep.max_mismatch <= tol;
  return rep;
}

// Support points, boundary and the shaded region supp + R+^2 as an SVG plot.
inline std::string newton_svg(const NewtonData& nd) {
  int mmax = 1, nmax = 1;
  for (const auto& p : nd.support) mmax = std::max(mmax, p[0]), nmax = std::max(nmax, p[1]);
  const int W = 480, H = 480, pad = 40;
  const double sx = (W - 2.0 * pad) / (mmax + 1), sy = (H - 2.0 * pad) / (nmax + 1);
  auto X = [&](double mu) { return pad + sx * mu; };
  auto Y = [&](double nu) { return H - pad - sy * nu; };
  std::string out;
  char buf[256];
  auto put = [&](const char* fmt, auto... v) {
    std::snprintf(buf, sizeof buf, fmt, v...);
    out += buf;
  };
  put("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n", W, H, W, H);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // region above the staircase
  std::string poly;
  const double top = nmax + 1, right = mmax + 1;
  std::snprintf(buf, sizeof buf, "%.3f,%.3f ", X(nd.vertices.front()[0]), Y(top));
  poly += buf;
  for (const auto& v : nd.vertices) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f ", X(v[0]), Y(v[1]));
    poly += buf;
  }
  std::snprintf(buf, sizeof buf, "%.3f,%.3f %.3f,%.3f", X(right), Y(nd.vertices.back()[1]), X(right), Y(top));
  poly += buf;
  out += "<polygon points=\"" + poly + "\" fill=\"#dde8f3\" stroke=\"none\"/>\n";
  put("<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"black\"/>\n", X(0), Y(0), X(right), Y(0));
  put("<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"black\"/>\n", X(0), Y(0), X(0), Y(top));
  for (int m = 0; m <= mmax; ++m)
    put("<text x=\"%.3f\" y=\"%.3f\" font-size=\"11\" text-anchor=\"middle\">%d</text>\n", X(m), Y(0) + 16, m);
  for (int v = 0; v <= nmax; ++v)
    put("<text x=\"%.3f\" y=\"%.3f\" font-size=\"11\" text-anchor=\"end\">%d</text>\n", X(0) - 6, Y(v) + 4, v);
  for (const auto& e : nd.edges)
    put("<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"#1f4e79\" stroke-width=\"2.5\"/>\n", X(e[0][0]),
        Y(e[0][1]), X(e[1][0]), Y(e[1][1]));
  for (const auto& p : nd.support) {
    const bool off = std::find(nd.above.begin(), nd.above.end(), p) != nd.above.end();
    put("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"5\" fill=\"%s\"/>\n", X(p[0]), Y(p[1]), off ? "#999999" : "#c0392b");
  }
  put("<text x=\"%d\" y=\"%d\" font-size=\"12\">convenient=%s radially_weighted_homogeneous=%s</text>\n", pad, pad / 2,
      nd.convenient ? "true" : "false", nd.radially_weighted_homogeneous ? "true" : "false");
  out += "</svg>\n";
  return out;
}

}  // namespace braidfib
