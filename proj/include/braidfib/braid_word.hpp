#pragma once

// Symbolic braid words: Artin, band (BKL) and tree-edge generator schemes, the
// projection to the symmetric group, homogeneity and the cyclic inhomogeneity
// count beta.
//
// beta is a property of a *word*, not of the braid it represents: inserting
// s s^-1 pairs changes it. Nothing here minimizes over representatives.

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "permutation.hpp"

namespace braidfib {

using cd = std::complex<double>;

enum class Scheme { Artin, Band, TreeEdge };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::Artin: return "artin";
    case Scheme::Band: return "band";
    case Scheme::TreeEdge: return "tree";
  }
  return "?";
}

struct Letter {
  int generator = 1;  // sigma_k, tree edge k, or the first band strand i
  int partner = 0;    // second band strand j (Band scheme only), i < j
  int sign = 1;

  static Letter artin(int k, int sign = 1) { return {k, 0, sign}; }
  static Letter band(int i, int j, int sign = 1) {
    if (i > j) std::swap(i, j);
    return {i, j, sign};
  }
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct TreeEdge {
  int a = 1;  // vertex indices, 1-based
  int b = 2;
  int sign = 1;
};

// Embedded plane tree on n vertices with a sign per edge.
struct PlaneTree {
  std::vector<cd> positions;
  std::vector<TreeEdge> edges;

  int size() const { return static_cast<int>(positions.size()); }

  void validate() const {
    const int n = size();
    require(n >= 1, ErrorKind::InvalidInput, "tree needs at least one vertex");
    require(static_cast<int>(edges.size()) == n - 1, ErrorKind::InvalidInput,
            "tree on n vertices needs n-1 edges");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        require(positions[i] != positions[j], ErrorKind::InvalidInput,
                "tree vertex positions must be pairwise distinct");
    std::vector<int> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : edges) {
      require(e.a >= 1 && e.a <= n && e.b >= 1 && e.b <= n && e.a != e.b, ErrorKind::InvalidInput,
              "tree edge endpoint out of range");
      require(e.sign == 1 || e.sign == -1, ErrorKind::InvalidInput, "tree edge sign must be +-1");
      int ra = find(e.a), rb = find(e.b);
      require(ra != rb, ErrorKind::InvalidInput, "tree edges contain a cycle");
      parent[ra] = rb;
    }
  }
};

// Band realization of a plane tree: vertices are relabeled 1..n by increasing
// real part (ties: increasing imaginary part), so that a left-to-right line graph
// realizes the Artin generators. This equals Rudolph's realization only after a
// planar isotopy of the tree.
struct TreeBandRealization {
  std::vector<int> vertex_label;              // vertex index (0-based) -> strand label
  std::vector<std::pair<int, int>> edge_pairs; // edge index (0-based) -> band pair (i<j)
  std::vector<std::string> notes;
};

inline TreeBandRealization tree_edge_to_band(const PlaneTree& tree) {
  tree.validate();
  const int n = tree.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const cd pa = tree.positions[a], pb = tree.positions[b];
    if (pa.real() != pb.real()) return pa.real() < pb.real();
    return pa.imag() < pb.imag();
  });
  TreeBandRealization out;
  out.vertex_label.assign(n, 0);
  for (int k = 0; k < n; ++k) out.vertex_label[order[k]] = k + 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (tree.positions[order[k]].real() == tree.positions[order[k + 1]].real())
      out.notes.push_back("vertices " + std::to_string(order[k] + 1) + " and " +
                          std::to_string(order[k + 1] + 1) +
                          " share a real part; tie broken by imaginary part");
  }
  out.notes.push_back("band realization agrees with the tree twists only up to planar isotopy");
  for (const auto& e : tree.edges) {
    int i = out.vertex_label[e.a - 1], j = out.vertex_label[e.b - 1];
    out.edge_pairs.emplace_back(std::min(i, j), std::max(i, j));
  }
  return out;
}

struct BraidWord {
  int strands = 1;
  Scheme scheme = Scheme::Artin;
  std::vector<Letter> letters;
  std::optional<PlaneTree> tree;  // required for Scheme::TreeEdge

  // Number of generators for the Artin and tree-edge schemes.
  int generator_count() const { return strands - 1; }
  int length() const { return static_cast<int>(letters.size()); }

  void validate() const {
    require(strands >= 1, ErrorKind::InvalidInput, "braid needs at least one strand");
    if (scheme == Scheme::TreeEdge) {
      require(tree.has_value(), ErrorKind::InvalidInput, "tree scheme requires a plane tree");
      require(tree->size() == strands, ErrorKind::InvalidInput, "tree size must equal strand count");
      tree->validate();
    }
    for (const auto& l : letters) {
      require(l.sign == 1 || l.sign == -1, ErrorKind::InvalidInput, "letter sign must be +-1");
      if (scheme == Scheme::Band) {
        require(l.generator >= 1 && l.generator < l.partner && l.partner <= strands,
                ErrorKind::InvalidInput, "band letter needs 1 <= i < j <= n");
      } else {
        require(l.generator >= 1 && l.generator <= strands - 1, ErrorKind::InvalidInput,
                "generator index out of range");
      }
    }
  }

  int exponent_sum() const {
    int s = 0;
    for (const auto& l : letters) s += l.sign;
    return s;
  }

  BraidWord inverse() const {
    BraidWord w = *this;
    std::reverse(w.letters.begin(), w.letters.end());
    for (auto& l : w.letters) l.sign = -l.sign;
    return w;
  }

  // Cyclic rotation moving the first k letters to the end.
  BraidWord rotated(int k) const {
    BraidWord w = *this;
    if (!w.letters.empty()) {
      const int len = length();
      k = ((k % len) + len) % len;
      std::rotate(w.letters.begin(), w.letters.begin() + k, w.letters.end());
    }
    return w;
  }

  BraidWord then(const BraidWord& other) const {
    require(other.strands == strands && other.scheme == scheme, ErrorKind::InvalidInput,
            "cannot concatenate words of different shape");
    BraidWord w = *this;
    w.letters.insert(w.letters.end(), other.letters.begin(), other.letters.end());
    return w;
  }
};

// Artin word from signed generator indices: {1, 2, 2, -1} = s1 s2 s2 s1^-1.
inline BraidWord artin_word(int strands, const std::vector<int>& signed_generators) {
  BraidWord w;
  w.strands = strands;
  for (int g : signed_generators) w.letters.push_back(Letter::artin(std::abs(g), g > 0 ? 1 : -1));
  w.validate();
  return w;
}

// The pair of strand positions each letter exchanges.
inline std::vector<std::pair<int, int>> swapped_positions(const BraidWord& w) {
  w.validate();
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::pair<int, int>> edge_pairs;
  if (w.scheme == Scheme::TreeEdge) edge_pairs = tree_edge_to_band(*w.tree).edge_pairs;
  for (const auto& l : w.letters) {
    switch (w.scheme) {
      case Scheme::Artin: pairs.emplace_back(l.generator, l.generator + 1); break;
      case Scheme::Band: pairs.emplace_back(l.generator, l.partner); break;
      case Scheme::TreeEdge: pairs.push_back(edge_pairs[l.generator - 1]); break;
    }
  }
  return pairs;
}

// Maps each starting position to the position where that strand ends.
inline Permutation permutation_of(const BraidWord& w) {
  std::vector<int> at(w.strands);  // at[pos-1] = strand label currently there
  std::iota(at.begin(), at.end(), 1);
  for (auto [i, j] : swapped_positions(w)) std::swap(at[i - 1], at[j - 1]);
  std::vector<int> img(w.strands);
  for (int pos = 1; pos <= w.strands; ++pos) img[at[pos - 1] - 1] = pos;
  return Permutation(std::move(img));
}

inline int closure_components(const BraidWord& w) { return permutation_of(w).cycle_count(); }

namespace detail {

inline void require_generator_scheme(const BraidWord& w, const char* op) {
  w.validate();
  require(w.scheme != Scheme::Band, ErrorKind::InvalidInput,
          std::string(op) + " needs a scheme with n-1 generators (artin or tree)");
}

// Signs of each generator's occurrences, in word order.
inline std::vector<std::vector<int>> occurrence_signs(const BraidWord& w) {
  std::vector<std::vector<int>> signs(std::max(0, w.generator_count()));
  for (const auto& l : w.letters) signs[l.generator - 1].push_back(l.sign);
  return signs;
}

}  // namespace detail

inline bool is_homogeneous(const BraidWord& w) {
  detail::require_generator_scheme(w, "is_homogeneous");
  for (const auto& s : detail::occurrence_signs(w)) {
    if (s.empty()) return false;
    if (std::any_of(s.begin(), s.end(), [&](int x) { return x != s.front(); })) return false;
  }
  return true;
}

// Cyclic sign alternations per generator, plus 2 for each absent generator.
inline int beta(const BraidWord& w) {
  detail::require_generator_scheme(w, "beta");
  int total = 0;
  for (const auto& s : detail::occurrence_signs(w)) {
    if (s.empty()) {
      total += 2;
      continue;
    }
    for (std::size_t k = 0; k < s.size(); ++k)
      if (s[k] != s[(k + 1) % s.size()]) ++total;
  }
  return total;
}

// min beta over words the caller asserts close to the same link; an upper bound
// on the Morse-Novikov number under that assertion.
inline int mn_upper_bound(const std::vector<BraidWord>& words) {
  require(!words.empty(), ErrorKind::InvalidInput, "mn_upper_bound needs at least one word");
  int best = beta(words.front());
  for (const auto& w : words) best = std::min(best, beta(w));
  return best;
}

// a_{i,j} = (s_i ... s_{j-2}) s_{j-1} (s_{j-2}^-1 ... s_i^-1).
inline BraidWord band_to_artin(const BraidWord& w) {
  w.validate();
  require(w.scheme == Scheme::Band, ErrorKind::InvalidInput, "band_to_artin needs a band word");
  BraidWord out;
  out.strands = w.strands;
  for (const auto& l : w.letters) {
    for (int k = l.generator; k <= l.partner - 2; ++k) out.letters.push_back(Letter::artin(k, 1));
    out.letters.push_back(Letter::artin(l.partner - 1, l.sign));
    for (int k = l.partner - 2; k >= l.generator; --k) out.letters.push_back(Letter::artin(k, -1));
  }
  return out;
}

// Rewrites a tree-edge word letter by letter in the band generators of its tree.
inline BraidWord tree_to_band(const BraidWord& w) {
  w.validate();
  require(w.scheme == Scheme::TreeEdge, ErrorKind::InvalidInput, "tree_to_band needs a tree word");
  const auto real = tree_edge_to_band(*w.tree);
  BraidWord out;
  out.strands = w.strands;
  out.scheme = Scheme::Band;
  for (const auto& l : w.letters) {
    auto [i, j] = real.edge_pairs[l.generator - 1];
    out.letters.push_back(Letter::band(i, j, l.sign));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format (docs/braid_word_format.md):
//
//   # comment
//   n=3 scheme=artin
//   s1 s2 s2 s2 s1 s2^-1
//
// Band letters are a<i>,<j> or a<i>,<j>^-1. The tree scheme adds vertex lines
// "v <re> <im>" and edge lines "e <a> <b> <+|->" before the word; s<k> then
// names edge k in the order the edges were listed.

inline BraidWord parse_braid_word(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  BraidWord w;
  bool have_header = false;
  PlaneTree tree;
  std::vector<std::string> tokens;
  auto bad = [](const std::string& why) { fail(ErrorKind::InvalidInput, "braid word: " + why); };
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_header) {
      if (first.rfind("n=", 0) != 0) bad("first line must be 'n=<int> scheme=<artin|band|tree>'");
      try {
        w.strands = std::stoi(first.substr(2));
      } catch (...) {
        bad("malformed strand count");
      }
      std::string sch;
      ls >> sch;
      if (sch == "scheme=artin" || sch.empty()) w.scheme = Scheme::Artin;
      else if (sch == "scheme=band") w.scheme = Scheme::Band;
      else if (sch == "scheme=tree") w.scheme = Scheme::TreeEdge;
      else bad("unknown scheme '" + sch + "'");
      have_header = true;
      continue;
    }
    if (first == "v") {
      double re = 0, im = 0;
      if (!(ls >> re >> im)) bad("vertex line needs 're im'");
      tree.positions.emplace_back(re, im);
      continue;
    }
    if (first == "e") {
      TreeEdge e;
      std::string sg;
      if (!(ls >> e.a >> e.b >> sg)) bad("edge line needs 'a b sign'");
      if (sg == "+" || sg == "+1") e.sign = 1;
      else if (sg == "-" || sg == "-1") e.sign = -1;
      else bad("edge sign must be + or -");
      tree.edges.push_back(e);
      continue;
    }
    tokens.push_back(first);
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
  }
  if (!have_header) bad("missing header line");
  for (const auto& tok : tokens) {
    std::string body = tok;
    int sign = 1;
    if (auto caret = body.find('^'); caret != std::string::npos) {
      if (body.substr(caret) != "^-1") bad("only ^-1 exponents are allowed: '" + tok + "'");
      sign = -1;
      body.erase(caret);
    }
    try {
      if (body.size() > 1 && body[0] == 's' && w.scheme != Scheme::Band) {
        std::size_t used = 0;
        int k = std::stoi(body.substr(1), &used);
        if (used != body.size() - 1) bad("malformed token '" + tok + "'");
        w.letters.push_back(Letter::artin(k, sign));
      } else if (body.size() > 1 && body[0] == 'a' && w.scheme == Scheme::Band) {
        auto comma = body.find(',');
        if (comma == std::string::npos) bad("band letter needs a<i>,<j>: '" + tok + "'");
        int i = std::stoi(body.substr(1, comma - 1));
        int j = std::stoi(body.substr(comma + 1));
        if (i == j) bad("band letter needs distinct strands: '" + tok + "'");
        w.letters.push_back(Letter::band(i, j, sign));
      } else {
        bad("unexpected token '" + tok + "' for scheme " + to_string(w.scheme));
      }
    } catch (const Error&) {
      throw;
    } catch (...) {
      bad("malformed token '" + tok + "'");
    }
  }
  if (w.scheme == Scheme::TreeEdge) w.tree = tree;
  w.validate();
  return w;
}

inline std::string format_braid_word(const BraidWord& w) {
  std::ostringstream out;
  out << "n=" << w.strands << " scheme=" << to_string(w.scheme) << "\n";
  if (w.scheme == Scheme::TreeEdge && w.tree) {
    out.precision(17);
    for (const auto& p : w.tree->positions) out << "v " << p.real() << " " << p.imag() << "\n";
    for (const auto& e : w.tree->edges) out << "e " << e.a << " " << e.b << " " << (e.sign > 0 ? "+" : "-") << "\n";
  }
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    const auto& l = w.letters[k];
    if (k) out << " ";
    if (w.scheme == Scheme::Band) out << "a" << l.generator << "," << l.partner;
    else out << "s" << l.generator;
    if (l.sign < 0) out << "^-1";
  }
  out << "\n";
  return out.str();
}

// True if b is a cyclic rotation of a (same letters, same scheme).
inline bool same_up_to_rotation(const BraidWord& a, const BraidWord& b) {
  if (a.strands != b.strands || a.length() != b.length()) return false;
  if (a.letters.empty()) return true;
  for (int k = 0; k < a.length(); ++k)
    if (a.rotated(k).letters == b.letters) return true;
  return false;
}

}  // namespace braidfib
