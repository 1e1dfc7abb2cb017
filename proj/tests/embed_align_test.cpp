#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "walign/embed_align.hpp"

namespace walign::embed {
namespace {

EmbeddedSentencePair one_hot_pair(std::size_t n, std::size_t dim) {
  EmbeddedSentencePair p;
  p.dim = dim;
  p.n_src_words = p.n_tgt_words = n;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> v(dim, 0.0);
    v[k] = 1.0;
    p.src_sub.push_back({k, "s" + std::to_string(k), v});
    p.tgt_sub.push_back({k, "t" + std::to_string(k), v});
  }
  return p;
}

TEST(Similarity, CosineValues) {
  EmbeddedSentencePair p;
  p.dim = 3;
  p.n_src_words = 2;
  p.n_tgt_words = 2;
  p.src_sub = {{0, "a", {1, 1, 0}}, {1, "b", {0, 0, 2}}};
  p.tgt_sub = {{0, "x", {1, 0, 0}}, {1, "y", {0, 0, 5}}};
  auto c = similarity_matrix(p);
  EXPECT_NEAR(c(0, 0), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(c(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(c(1, 1), 1.0, 1e-15);
}

TEST(Similarity, ZeroVectorNamesSubword) {
  EmbeddedSentencePair p = one_hot_pair(2, 2);
  p.tgt_sub[1].vec = {0, 0};
  try {
    similarity_matrix(p);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("t1"), std::string::npos);
  }
}

TEST(Extract, SingleCellAlwaysLinks) {
  Matrix c(1, 1);
  c(0, 0) = -0.7;
  for (double t : {0.001, 0.5, 0.999}) {
    ExtractorConfig cfg;
    cfg.threshold = t;
    EXPECT_EQ(extract_subword_links(c, cfg), (SubwordLinks{{0, 0}}));
  }
}

TEST(Extract, BlockOneHotGivesDiagonal) {
  auto c = similarity_matrix(one_hot_pair(3, 3));
  ExtractorConfig cfg;
  cfg.threshold = 0.5;
  // Softmax of a one-hot row: e / (e + 2) = 0.576 on the diagonal, 1 / (e + 2) = 0.212 elsewhere.
  auto p = forward_probs(c, 1.0);
  EXPECT_NEAR(p(0, 0), std::exp(1.0) / (std::exp(1.0) + 2.0), 1e-12);
  EXPECT_EQ(extract_subword_links(c, cfg), (SubwordLinks{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(Extract, ConfigValidation) {
  Matrix c(1, 1);
  ExtractorConfig cfg;
  cfg.threshold = 1.0;
  EXPECT_THROW(extract_subword_links(c, cfg), DataError);
  cfg.threshold = 0.1;
  cfg.temperature = 0.0;
  EXPECT_THROW(extract_subword_links(c, cfg), DataError);
}

Matrix random_matrix(std::mt19937_64& g, std::size_t r, std::size_t c) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(r, c);
  for (double& v : m.data) v = u(g);
  return m;
}

TEST(Extract, ThresholdMonotonicity) {
  std::mt19937_64 g(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_matrix(g, 1 + g() % 8, 1 + g() % 8);
    ExtractorConfig lo, hi;
    lo.threshold = 0.01 + 0.4 * double(g() % 1000) / 1000.0;
    hi.threshold = lo.threshold + 0.3 * double(g() % 1000) / 1000.0;
    lo.temperature = hi.temperature = 0.1;
    auto a = extract_subword_links(c, lo), b = extract_subword_links(c, hi);
    EXPECT_TRUE(std::includes(a.begin(), a.end(), b.begin(), b.end()));
  }
}

TEST(Extract, TransposeSymmetry) {
  std::mt19937_64 g(37);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_matrix(g, 1 + g() % 7, 1 + g() % 7);
    ExtractorConfig cfg;
    cfg.threshold = 0.2;
    cfg.temperature = 0.2;
    SubwordLinks flipped;
    for (auto [u, v] : extract_subword_links(c.transposed(), cfg)) flipped.insert({v, u});
    EXPECT_EQ(extract_subword_links(c, cfg), flipped);
  }
}

TEST(Aggregate, RuleContrast) {
  EmbeddedSentencePair p;
  p.dim = 1;
  p.n_src_words = 1;
  p.n_tgt_words = 1;
  p.src_sub = {{0, "per", {1}}, {0, "##ro", {1}}};
  p.tgt_sub = {{0, "dog", {1}}};
  SubwordLinks links{{1, 0}};
  EXPECT_EQ(aggregate_to_words(links, p, Aggregation::Any).sure(), (LinkSet{{0, 0}}));
  EXPECT_TRUE(aggregate_to_words(links, p, Aggregation::All).sure().empty());
  EXPECT_EQ(aggregate_to_words({{0, 0}, {1, 0}}, p, Aggregation::All).sure(), (LinkSet{{0, 0}}));
  EXPECT_TRUE(aggregate_to_words({}, p, Aggregation::Any).empty());
}

TEST(Aggregate, OneSubwordPerWordIsIdentity) {
  auto p = one_hot_pair(4, 4);
  SubwordLinks links{{0, 1}, {2, 3}, {3, 3}};
  EXPECT_EQ(aggregate_to_words(links, p, Aggregation::Any).sure(), (LinkSet{{0, 1}, {2, 3}, {3, 3}}));
  EXPECT_EQ(aggregate_to_words(links, p, Aggregation::All).sure(), (LinkSet{{0, 1}, {2, 3}, {3, 3}}));
}

TEST(Align, ScaleInvarianceAndBounds) {
  std::mt19937_64 g(41);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 100; ++trial) {
    EmbeddedSentencePair p;
    p.dim = 5;
    auto side = [&](std::vector<Subword>& subs, std::size_t& words) {
      words = 1 + g() % 5;
      for (std::size_t w = 0; w < words; ++w)
        for (std::size_t k = 0, pieces = 1 + g() % 2; k < pieces; ++k) {
          Subword s{w, "x", {}};
          for (int d = 0; d < 5; ++d) s.vec.push_back(normal(g));
          subs.push_back(s);
        }
    };
    side(p.src_sub, p.n_src_words);
    side(p.tgt_sub, p.n_tgt_words);
    ExtractorConfig cfg;
    cfg.threshold = 0.15;
    cfg.temperature = 0.3;
    auto base = align_pair(p, cfg);
    base.check_bounds(p.n_src_words, p.n_tgt_words);
    auto scaled = p;
    for (auto& s : scaled.src_sub) {
      const double k = 0.01 + double(g() % 1000);
      for (double& v : s.vec) v *= k;
    }
    EXPECT_EQ(align_pair(scaled, cfg), base);
  }
}

TEST(Align, LayerCheck) {
  auto p = one_hot_pair(2, 2);
  p.layer = 8;
  ExtractorConfig cfg;
  cfg.layer = 7;
  EXPECT_THROW(align_pair(p, cfg), DataError);
  cfg.layer = 8;
  EXPECT_NO_THROW(align_pair(p, cfg));
}

}  // namespace
}  // namespace walign::embed
