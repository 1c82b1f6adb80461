#pragma once

// Trigonometric polynomials z(t) = sum_d c_d exp(i d t / q) with a fixed
// frequency denominator q >= 1. q = 1 gives the 2*pi-periodic case; q > 1 is
// used for single strands of a braid whose closure permutation has order q.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <utility>
#include <numeric>
#include <vector>

#include "error.hpp"

namespace braidfib {

using cd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

class TrigCurve {
 public:
  TrigCurve() = default;
  explicit TrigCurve(std::map<int, cd> coeffs, int denominator = 1)
      : coeffs_(std::move(coeffs)), q_(denominator) {
    require(q_ >= 1, ErrorKind::InvalidInput, "frequency denominator must be positive");
    prune(0.0);
  }

  static TrigCurve constant(cd c) { return TrigCurve({{0, c}}); }
  // c * exp(i d t / q)
  static TrigCurve mode(int d, cd c, int q = 1) { return TrigCurve({{d, c}}, q); }

  int denominator() const { return q_; }
  const std::map<int, cd>& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  cd coeff(int d) const {
    auto it = coeffs_.find(d);
    return it == coeffs_.end() ? cd{} : it->second;
  }

  int max_abs_degree() const {
    int m = 0;
    for (const auto& [d, c] : coeffs_) m = std::max(m, std::abs(d));
    return m;
  }

  cd operator()(double t) const {
    return sum(t, [](int, cd c) { return c; });
  }

  // k-th derivative in t.
  cd derivative(double t, int k = 1) const {
    return sum(t, [this, k](int d, cd c) { return c * std::pow(cd(0.0, static_cast<double>(d) / q_), k); });
  }

  TrigCurve derivative_curve() const {
    std::map<int, cd> out;
    for (const auto& [d, c] : coeffs_) out[d] = c * cd(0.0, static_cast<double>(d) / q_);
    return TrigCurve(std::move(out), q_);
  }

  // Same curve with denominator q * m.
  TrigCurve with_denominator(int q) const {
    require(q % q_ == 0, ErrorKind::InvalidInput, "denominator must be a multiple of the current one");
    const int m = q / q_;
    std::map<int, cd> out;
    for (const auto& [d, c] : coeffs_) out[d * m] = c;
    return TrigCurve(std::move(out), q);
  }

  // t -> z(t + tau)
  TrigCurve shifted(double tau) const {
    std::map<int, cd> out;
    for (const auto& [d, c] : coeffs_) out[d] = c * std::polar(1.0, d * tau / q_);
    return TrigCurve(std::move(out), q_);
  }

  // t -> z(-t)
  TrigCurve reversed() const {
    std::map<int, cd> out;
    for (const auto& [d, c] : coeffs_) out[-d] = c;
    return TrigCurve(std::move(out), q_);
  }

  // Drops coefficients with |c| <= tol; returns the summed modulus dropped.
  double prune(double tol) {
    double dropped = 0;
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      if (std::abs(it->second) <= tol) {
        dropped += std::abs(it->second);
        it = coeffs_.erase(it);
      } else {
        ++it;
      }
    }
    return dropped;
  }

  // Drops the smallest coefficients as long as their summed modulus stays
  // within budget, which bounds the pointwise change. Returns what was dropped.
  double prune_budget(double budget) {
    std::vector<std::pair<double, int>> by_size;
    for (const auto& [d, c] : coeffs_) by_size.emplace_back(std::abs(c), d);
    std::sort(by_size.begin(), by_size.end());
    double dropped = 0;
    for (const auto& [a, d] : by_size) {
      if (dropped + a > budget) break;
      dropped += a;
      coeffs_.erase(d);
    }
    return dropped;
  }

  // Reduces to the smallest denominator dividing every degree.
  TrigCurve reduced() const {
    int g = q_;
    for (const auto& [d, c] : coeffs_) g = std::gcd(g, std::abs(d));
    if (g <= 1) return *this;
    std::map<int, cd> out;
    for (const auto& [d, c] : coeffs_) out[d / g] = c;
    return TrigCurve(std::move(out), q_ / g);
  }

  TrigCurve& operator+=(const TrigCurve& o) {
    unify(o, [&](TrigCurve& a, const TrigCurve& b) {
      for (const auto& [d, c] : b.coeffs_) a.coeffs_[d] += c;
    });
    return *this;
  }
  TrigCurve& operator-=(const TrigCurve& o) { return *this += o * cd(-1.0); }

  TrigCurve& operator*=(cd s) {
    for (auto& [d, c] : coeffs_) c *= s;
    return *this;
  }

  friend TrigCurve operator+(TrigCurve a, const TrigCurve& b) { return a += b; }
  friend TrigCurve operator-(TrigCurve a, const TrigCurve& b) { return a -= b; }
  friend TrigCurve operator*(TrigCurve a, cd s) { return a *= s; }
  friend TrigCurve operator*(cd s, TrigCurve a) { return a *= s; }

  friend TrigCurve operator*(const TrigCurve& a, const TrigCurve& b) {
    const int q = std::lcm(a.q_, b.q_);
    const TrigCurve x = a.with_denominator(q), y = b.with_denominator(q);
    std::map<int, cd> out;
    for (const auto& [d1, c1] : x.coeffs_)
      for (const auto& [d2, c2] : y.coeffs_) out[d1 + d2] += c1 * c2;
    return TrigCurve(std::move(out), q);
  }

  // Max |c_d| difference after bringing both to a common denominator.
  friend double distance(const TrigCurve& a, const TrigCurve& b) {
    const int q = std::lcm(a.q_, b.q_);
    const TrigCurve x = a.with_denominator(q), y = b.with_denominator(q);
    double m = 0;
    for (const auto& [d, c] : x.coeffs_) m = std::max(m, std::abs(c - y.coeff(d)));
    for (const auto& [d, c] : y.coeffs_) m = std::max(m, std::abs(c - x.coeff(d)));
    return m;
  }

  // Sum of |c_d|, an upper bound for max_t |z(t)|.
  double l1_norm() const {
    double s = 0;
    for (const auto& [d, c] : coeffs_) s += std::abs(c);
    return s;
  }

 private:
  template <class F>
  void unify(const TrigCurve& o, F&& f) {
    const int q = std::lcm(q_, o.q_);
    if (q != q_) *this = with_denominator(q);
    f(*this, o.q_ == q ? o : o.with_denominator(q));
  }

  // sum of w(d, c_d) e^{idt/q}. Long series step through the powers of
  // e^{it/q} and re-anchor with an exact exponential every 64 terms.
  template <class W>
  cd sum(double t, W&& w) const {
    cd s{};
    if (coeffs_.size() <= 16) {
      for (const auto& [d, c] : coeffs_) s += w(d, c) * std::polar(1.0, d * t / q_);
      return s;
    }
    const cd step = std::polar(1.0, t / q_);
    int at = 0, since = 64;
    cd e{};
    for (const auto& [d, c] : coeffs_) {
      if (since >= 64 || d - at > 8) {
        e = std::polar(1.0, d * t / q_);
        since = 0;
      } else {
        for (; at < d; ++at) e *= step;
        ++since;
      }
      at = d;
      s += w(d, c) * e;
    }
    return s;
  }

  std::map<int, cd> coeffs_;
  int q_ = 1;
};

// Projection of samples f(2*pi*L*k/M), k = 0..M-1, onto modes |d| <= D with
// denominator L. Plain DFT; M is small enough in practice that FFT is not needed.
template <class F>
TrigCurve fourier_project(F&& f, int L, int D, int M) {
  require(M > 2 * D, ErrorKind::InvalidInput, "too few samples for the requested harmonics");
  std::vector<cd> samples(M);
  for (int k = 0; k < M; ++k) samples[k] = f(kTwoPi * L * k / M);
  std::map<int, cd> out;
  for (int d = -D; d <= D; ++d) {
    cd s{};
    for (int k = 0; k < M; ++k) s += samples[k] * std::polar(1.0, -kTwoPi * d * k / M);
    out[d] = s / static_cast<double>(M);
  }
  TrigCurve c(std::move(out), L);
  c.prune(1e-15);
  return c;
}

}  // namespace braidfib
