#include <gtest/gtest.h>

#include <random>

#include <braidfib/braid_word.hpp>

#include "oracles.hpp"

using namespace braidfib;

namespace {

Permutation from_positions(const std::vector<int>& pos) { return Permutation(pos); }

const std::vector<int> kFiveTwo{1, 2, 2, 2, 1, -2};
const std::vector<int> kThirteen{-2, 4, -2, -3, 1, -2, -1, -2, 4, -3, 1, -2, -1};

// The tree of the five-strand example: vertices on a line, edges 1-3, 2-3, 3-4, 4-5.
BraidWord tree_word_example() {
  return parse_braid_word(
      "n=5 scheme=tree\n"
      "v 0 0\nv 1 0\nv 2 0\nv 3 0\nv 4 0\n"
      "e 1 3 -\ne 2 3 -\ne 3 4 -\ne 4 5 +\n"
      "s2^-1 s4 s2^-1 s3^-1 s1^-1 s2^-1 s4 s3^-1 s1^-1\n");
}

}  // namespace

TEST(Permutation, EmptyWordIsIdentity) {
  EXPECT_TRUE(permutation_of(artin_word(3, {})).is_identity());
}

TEST(Permutation, FiveTwoWordIsThreeCycle) {
  const auto p = permutation_of(artin_word(3, kFiveTwo));
  EXPECT_EQ(p, from_positions(oracle::strand_positions(3, kFiveTwo)));
  EXPECT_EQ(p.to_string(), "(1 2 3)");
}

TEST(Permutation, CoxeterElementIsFourCycle) {
  const auto p = permutation_of(artin_word(4, {1, 2, 3}));
  EXPECT_EQ(p, from_positions(oracle::strand_positions(4, {1, 2, 3})));
  EXPECT_EQ(p.cycle_type(), (std::vector<int>{4}));
}

TEST(Permutation, BandLetterSwapsItsPair) {
  BraidWord w;
  w.strands = 4;
  w.scheme = Scheme::Band;
  w.letters = {Letter::band(1, 4)};
  EXPECT_EQ(permutation_of(w), Permutation::transposition(4, 1, 4));
}

TEST(Closure, ComponentCounts) {
  EXPECT_EQ(closure_components(artin_word(3, kFiveTwo)), 1);
  EXPECT_EQ(closure_components(artin_word(4, {})), 4);
  EXPECT_EQ(closure_components(artin_word(3, {1, 1})), 3);
  EXPECT_EQ(closure_components(artin_word(3, {1, 1, 1})), 2);
}

TEST(Homogeneity, Examples) {
  EXPECT_TRUE(is_homogeneous(artin_word(3, {1, -2, 1, -2})));
  EXPECT_FALSE(is_homogeneous(artin_word(3, kFiveTwo)));
  EXPECT_FALSE(is_homogeneous(artin_word(3, {1, 1, 1})));
}

TEST(Homogeneity, BandSchemeRejected) {
  BraidWord w;
  w.strands = 3;
  w.scheme = Scheme::Band;
  w.letters = {Letter::band(1, 3)};
  EXPECT_THROW(is_homogeneous(w), Error);
}

TEST(Beta, ThirteenLetterWord) { EXPECT_EQ(beta(artin_word(5, kThirteen)), 4); }

TEST(Beta, FiveTwoWord) { EXPECT_EQ(beta(artin_word(3, kFiveTwo)), 2); }

TEST(Beta, EmptyWordCountsAbsentGenerators) {
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(beta(artin_word(n, {})), 2 * (n - 1));
}

TEST(Beta, TreeWordOfExampleIsZero) { EXPECT_EQ(beta(tree_word_example()), 0); }

TEST(Beta, TreeWordExpandsToTheThirteenLetterWord) {
  // a_{1,3}^{-1} = s1 s2^-1 s1^-1, so the band expansion must reproduce the Artin word exactly.
  const BraidWord artin = band_to_artin(tree_to_band(tree_word_example()));
  EXPECT_EQ(artin.letters, artin_word(5, kThirteen).letters);
}

TEST(MnBound, Examples) {
  EXPECT_EQ(mn_upper_bound({artin_word(3, kFiveTwo)}), 2);
  EXPECT_EQ(mn_upper_bound({artin_word(3, {1, 2, 1, 2})}), 0);
  EXPECT_EQ(mn_upper_bound({artin_word(5, kThirteen), tree_word_example()}), 0);
  EXPECT_THROW(mn_upper_bound({}), Error);
}

TEST(BetaProperty, ZeroExactlyWhenHomogeneous) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> N(2, 8), L(0, 40);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = N(rng);
    const auto g = oracle::random_word(rng, n, L(rng));
    const auto w = artin_word(n, g);
    EXPECT_EQ(beta(w), oracle::beta(n, g));
    EXPECT_EQ(beta(w) == 0, is_homogeneous(w));
  }
}

TEST(BetaProperty, CyclicRotationInvariant) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = artin_word(5, oracle::random_word(rng, 5, 12));
    for (int k = 0; k < w.length(); ++k) EXPECT_EQ(beta(w.rotated(k)), beta(w));
  }
}

TEST(BetaProperty, InsertingCancellingPairNeverDecreases) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> pos(0, 12), gen(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    auto g = oracle::random_word(rng, 5, 12);
    const int before = oracle::beta(5, g);
    const int j = gen(rng);
    const auto at = g.begin() + pos(rng);
    g.insert(g.insert(at, -j), j);
    EXPECT_GE(beta(artin_word(5, g)), before);
  }
}

TEST(PermutationProperty, CompositionAndInverse) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = artin_word(6, oracle::random_word(rng, 6, 9));
    const auto b = artin_word(6, oracle::random_word(rng, 6, 7));
    EXPECT_EQ(permutation_of(a.then(b)), permutation_of(a).then(permutation_of(b)));
    EXPECT_EQ(permutation_of(a.inverse()), permutation_of(a).inverse());
    EXPECT_EQ(closure_components(a), permutation_of(a).cycle_count());
  }
}

TEST(TreeToBand, LineGraphGivesArtinPairs) {
  PlaneTree t;
  for (int k = 0; k < 5; ++k) t.positions.emplace_back(k * 1.5 - 2.0, 0.1 * k);
  for (int k = 1; k < 5; ++k) t.edges.push_back({k, k + 1, 1});
  const auto r = tree_edge_to_band(t);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(r.edge_pairs[k], std::make_pair(k + 1, k + 2));
  EXPECT_FALSE(r.notes.empty());
}

TEST(TreeToBand, StarTreeJoinsCentreToEveryLeaf) {
  PlaneTree t;
  const int leaves = 5;
  t.positions.emplace_back(0.0, 0.0);
  for (int j = 0; j < leaves; ++j) t.positions.push_back(std::polar(1.0, 2 * 3.14159265358979 * j / leaves + 0.3));
  for (int j = 0; j < leaves; ++j) t.edges.push_back({1, j + 2, 1});
  const auto r = tree_edge_to_band(t);
  const int centre = r.vertex_label[0];
  std::set<int> seen;
  for (const auto& [i, j] : r.edge_pairs) {
    EXPECT_TRUE(i == centre || j == centre);
    seen.insert(i == centre ? j : i);
  }
  EXPECT_EQ(seen.size(), static_cast<std::size_t>(leaves));
}

TEST(TreeToBand, PairsFormASpanningTree) {
  const auto r = tree_edge_to_band(*tree_word_example().tree);
  std::vector<int> parent{0, 1, 2, 3, 4, 5};
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (const auto& [i, j] : r.edge_pairs) {
    ASSERT_NE(find(i), find(j));
    parent[find(i)] = find(j);
  }
}

TEST(TreeValidation, RejectsCyclesAndDuplicates) {
  PlaneTree t;
  t.positions = {cd(0, 0), cd(1, 0), cd(2, 0)};
  t.edges = {{1, 2, 1}, {2, 1, 1}};
  EXPECT_THROW(t.validate(), Error);
  t.edges = {{1, 2, 1}, {2, 3, 1}};
  t.positions[2] = t.positions[0];
  EXPECT_THROW(t.validate(), Error);
}

TEST(Parser, RoundTripsAllSchemes) {
  for (const char* text : {"n=3 scheme=artin\ns1 s2^-1 s1\n", "n=4 scheme=band\na1,3 a2,4^-1\n"}) {
    const auto w = parse_braid_word(text);
    EXPECT_EQ(format_braid_word(w), text);
  }
  const auto t = tree_word_example();
  EXPECT_EQ(parse_braid_word(format_braid_word(t)).letters, t.letters);
}

TEST(Parser, RejectsMalformedInput) {
  for (const char* text : {"s1 s2\n", "n=3 scheme=artin\ns3\n", "n=3 scheme=artin\ns1^2\n", "n=3 scheme=weird\n",
                           "n=3 scheme=band\na1,1\n", "n=3 scheme=artin\nx1\n"})
    EXPECT_THROW(parse_braid_word(text), Error) << text;
}

TEST(WordOps, RotationAndInverse) {
  const auto w = artin_word(3, {1, -2, 2});
  EXPECT_EQ(w.rotated(1).letters, artin_word(3, {-2, 2, 1}).letters);
  EXPECT_EQ(w.inverse().letters, artin_word(3, {-2, 2, -1}).letters);
  EXPECT_EQ(w.exponent_sum(), 1);
  EXPECT_TRUE(same_up_to_rotation(w, w.rotated(2)));
}
