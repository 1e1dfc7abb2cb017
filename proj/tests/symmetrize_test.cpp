#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "walign/symmetrize.hpp"

namespace walign {
namespace {

bool subset(const LinkSet& a, const LinkSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

LinkSet random_links(std::mt19937_64& g, std::size_t n, std::size_t m) {
  LinkSet s;
  for (std::size_t k = 0, count = g() % (n * m + 1); k < count; ++k) s.insert({g() % n, g() % m});
  return s;
}

TEST(Symmetrize, SetAlgebra) {
  LinkSet fwd{{0, 0}, {1, 1}}, rev{{1, 1}, {2, 1}};
  EXPECT_EQ(symmetrize(fwd, rev, Heuristic::Union, 3, 2), (LinkSet{{0, 0}, {1, 1}, {2, 1}}));
  EXPECT_EQ(symmetrize(fwd, rev, Heuristic::Intersection, 3, 2), (LinkSet{{1, 1}}));
  EXPECT_EQ(symmetrize(fwd, rev, Heuristic::Forward, 3, 2), fwd);
  EXPECT_EQ(symmetrize(fwd, rev, Heuristic::Reverse, 3, 2), rev);
}

TEST(Symmetrize, AgreementIsFixed) {
  LinkSet x{{0, 1}, {1, 0}, {2, 2}};
  for (Heuristic h : kAllHeuristics) EXPECT_EQ(symmetrize(x, x, h, 3, 3), x) << to_string(h);
}

TEST(Symmetrize, GrowTrace) {
  // A0 = {(0,0)}. Visiting (0,0) adds (1,1); visiting (1,1) adds (2,1)
  // (row 2 unlinked) and then the diagonal neighbour (2,2) (column 2 unlinked).
  LinkSet fwd{{0, 0}, {1, 1}, {2, 1}}, rev{{0, 0}, {2, 2}};
  const LinkSet expected{{0, 0}, {1, 1}, {2, 1}, {2, 2}};
  EXPECT_EQ(oracle::symmetrize(fwd, rev, "grow-diag", 3, 3), expected);
  EXPECT_EQ(symmetrize(fwd, rev, Heuristic::GrowDiag, 3, 3), expected);
  EXPECT_EQ(symmetrize(fwd, rev, Heuristic::GrowDiagFinal, 3, 3), expected);
}

TEST(Symmetrize, FinalPassAddsUnlinkedEndpoints) {
  // Nothing to grow from (empty intersection); final takes fwd links first.
  LinkSet fwd{{0, 0}}, rev{{0, 2}, {1, 2}};
  EXPECT_TRUE(symmetrize(fwd, rev, Heuristic::GrowDiag, 2, 3).empty());
  EXPECT_EQ(symmetrize(fwd, rev, Heuristic::GrowDiagFinal, 2, 3), (LinkSet{{0, 0}, {0, 2}, {1, 2}}));
}

TEST(Symmetrize, RejectsOutOfBounds) {
  EXPECT_THROW(symmetrize(LinkSet{{3, 0}}, LinkSet{}, Heuristic::Union, 3, 3), DataError);
}

TEST(Symmetrize, MatchesNaiveOracleAndChain) {
  std::mt19937_64 g(17);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + g() % 6, m = 1 + g() % 6;
    const LinkSet fwd = random_links(g, n, m), rev = random_links(g, n, m);
    for (Heuristic h : kAllHeuristics)
      EXPECT_EQ(symmetrize(fwd, rev, h, n, m), oracle::symmetrize(fwd, rev, to_string(h), int(n), int(m)));
    const auto inter = symmetrize(fwd, rev, Heuristic::Intersection, n, m);
    const auto gd = symmetrize(fwd, rev, Heuristic::GrowDiag, n, m);
    const auto gdf = symmetrize(fwd, rev, Heuristic::GrowDiagFinal, n, m);
    const auto uni = symmetrize(fwd, rev, Heuristic::Union, n, m);
    EXPECT_TRUE(subset(inter, gd));
    EXPECT_TRUE(subset(gd, gdf));
    EXPECT_TRUE(subset(gdf, uni));
    EXPECT_EQ(uni, symmetrize(rev, fwd, Heuristic::Union, n, m));
    EXPECT_EQ(inter, symmetrize(rev, fwd, Heuristic::Intersection, n, m));
    EXPECT_EQ(symmetrize(fwd, rev, Heuristic::Forward, n, m), symmetrize(rev, fwd, Heuristic::Reverse, n, m));
  }
}

TEST(Symmetrize, CorpusLevel) {
  auto corpus = parse_bitext("a b ||| x y\na ||| x\n");
  AlignmentSet fwd{SentenceAlignment::sure_only({{0, 0}}), SentenceAlignment::sure_only({{0, 0}})};
  AlignmentSet rev{SentenceAlignment::sure_only({{1, 1}}), SentenceAlignment{}};
  auto out = symmetrize(fwd, rev, Heuristic::Union, corpus);
  EXPECT_EQ(out[0].sure(), (LinkSet{{0, 0}, {1, 1}}));
  EXPECT_EQ(out[1].sure(), (LinkSet{{0, 0}}));
  EXPECT_EQ(symmetrize(fwd, rev, Heuristic::Union), out);
  EXPECT_THROW(symmetrize(fwd, AlignmentSet{}, Heuristic::Union, corpus), DataError);
}

TEST(Symmetrize, HeuristicNames) {
  for (Heuristic h : kAllHeuristics) EXPECT_EQ(parse_heuristic(to_string(h)), h);
  EXPECT_THROW(parse_heuristic("grow"), DataError);
}

}  // namespace
}  // namespace walign
