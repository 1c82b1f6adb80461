#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"

namespace braidfib {

// Bijection of {1..n}. images()[i-1] is the image of i.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size() + 1, false);
    for (int v : images_) {
      require(v >= 1 && v <= size() && !seen[v], ErrorKind::InvalidInput,
              "permutation images must be a bijection on 1..n");
      seen[v] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    return Permutation(std::move(img));
  }

  static Permutation transposition(int n, int a, int b) {
    auto p = identity(n);
    std::swap(p.images_[a - 1], p.images_[b - 1]);
    return p;
  }

  // The cycle (1 2 ... n).
  static Permutation long_cycle(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = (i + 1) % n + 1;
    return Permutation(std::move(img));
  }

  // Builds a permutation from disjoint cycles, e.g. {{1,2,3}}.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    auto p = identity(n);
    for (const auto& c : cycles)
      for (std::size_t k = 0; k < c.size(); ++k) p.images_[c[k] - 1] = c[(k + 1) % c.size()];
    return Permutation(p.images_);
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  // Apply *this first, then `next`.
  Permutation then(const Permutation& next) const {
    require(next.size() == size(), ErrorKind::InvalidInput, "permutation size mismatch");
    std::vector<int> img(images_.size());
    for (int i = 1; i <= size(); ++i) img[i - 1] = next((*this)(i));
    return Permutation(std::move(img));
  }

  Permutation inverse() const {
    std::vector<int> img(images_.size());
    for (int i = 1; i <= size(); ++i) img[(*this)(i) - 1] = i;
    return Permutation(std::move(img));
  }

  bool is_identity() const {
    for (int i = 1; i <= size(); ++i)
      if ((*this)(i) != i) return false;
    return true;
  }

  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images_.size() + 1, false);
    for (int i = 1; i <= size(); ++i) {
      if (seen[i]) continue;
      std::vector<int> c;
      for (int j = i; !seen[j]; j = (*this)(j)) {
        seen[j] = true;
        c.push_back(j);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  int cycle_count() const { return static_cast<int>(cycles().size()); }

  // Sorted cycle lengths, longest first.
  std::vector<int> cycle_type() const {
    std::vector<int> t;
    for (const auto& c : cycles()) t.push_back(static_cast<int>(c.size()));
    std::sort(t.rbegin(), t.rend());
    return t;
  }

  // Cycle notation without fixed points; "()" for the identity.
  std::string to_string() const {
    std::string s;
    for (const auto& c : cycles()) {
      if (c.size() < 2) continue;
      s += "(";
      for (std::size_t k = 0; k < c.size(); ++k) s += (k ? " " : "") + std::to_string(c[k]);
      s += ")";
    }
    return s.empty() ? "()" : s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

}  // namespace braidfib
