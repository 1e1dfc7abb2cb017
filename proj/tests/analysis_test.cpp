#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "walign/analysis.hpp"
#include "walign/pipeline.hpp"

namespace walign::analysis {
namespace {

TEST(Quantile, LinearInterpolation) {
  std::vector<double> x{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(quantile(x, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(x, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile(x, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile(x, 1.0), 4.0);
}

TEST(NestedSamples, PrefixesOfOnePermutation) {
  const std::vector<std::size_t> sizes{50, 100, 200, 400};
  auto s = nested_samples(500, sizes, 3);
  ASSERT_EQ(s.size(), 4u);
  for (std::size_t k = 0; k < s.size(); ++k) {
    EXPECT_EQ(s[k].size(), sizes[k]);
    EXPECT_TRUE(std::is_sorted(s[k].begin(), s[k].end()));
    if (k) {
      EXPECT_TRUE(std::includes(s[k].begin(), s[k].end(), s[k - 1].begin(), s[k - 1].end()));
    }
  }
  EXPECT_EQ(nested_samples(500, sizes, 3), s);
  EXPECT_NE(nested_samples(500, sizes, 4), s);
  EXPECT_THROW(nested_samples(100, {50, 200}, 0), DataError);
  EXPECT_THROW(nested_samples(100, {50, 50}, 0), DataError);
}

TEST(Subset, FullSizeMatchesPlainRunAndIsDeterministic) {
  auto syn = oracle::diagonal_bitext(120, 20, 4.0, 0.08, 13);
  auto eval = syn.corpus.select({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  AlignmentSet gold(syn.gold.begin(), syn.gold.begin() + 10);
  ibm::TrainConfig cfg;
  std::vector<Method> methods{statistical_method("diag", eval, cfg, Heuristic::Union)};
  auto a = subset_analysis(syn.corpus, gold, {30, 120}, methods, 5);
  auto b = subset_analysis(syn.corpus, gold, {30, 120}, methods, 5);
  ASSERT_EQ(a.rows.size(), 2u);
  EXPECT_EQ(a.rows[1].aer, b.rows[1].aer);
  EXPECT_EQ(a.rows[0].aer, b.rows[0].aer);
  EXPECT_EQ(subset_tsv(a), subset_tsv(b));
  const double plain = evaluate(align_bidirectional(syn.corpus, eval, cfg, Heuristic::Union), gold).aer;
  EXPECT_EQ(a.rows[1].aer[0], plain);
}

TEST(Length, GroupsPartitionTheCorpus) {
  auto corpus = parse_bitext("a ||| x\naaaa ||| xxxx\naa ||| x\naaa bb ||| x y\na ||| y\n");
  auto groups = length_groups(corpus, 2);
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0], (std::vector<std::size_t>{0, 4}));  // ties keep id order
  EXPECT_EQ(groups[1], (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(groups[2], (std::vector<std::size_t>{3}));
  std::size_t total = 0;
  for (auto& g : groups) total += g.size();
  EXPECT_EQ(total, corpus.size());
}

TEST(Length, SingleGroupAverageIsCorpusMean) {
  auto syn = oracle::diagonal_bitext(10, 15, 4.0, 0.08, 19);
  std::vector<Method> methods{{"const", [&](const ParallelCorpus&) { return syn.gold; }}};
  auto rep = length_analysis(syn.corpus, syn.gold, 10, methods);
  ASSERT_EQ(rep.rows.size(), 1u);
  double chars = 0;
  for (const auto& p : syn.corpus.pairs()) chars += double(char_length(p));
  EXPECT_NEAR(rep.rows[0].avg_chars, chars / 10.0, 1e-12);
  EXPECT_FALSE(rep.rows[0].partial);
  EXPECT_EQ(rep.rows[0].aer[0], 0.0);
  auto split = length_analysis(syn.corpus, syn.gold, 4, methods);
  ASSERT_EQ(split.rows.size(), 3u);
  EXPECT_TRUE(split.rows[2].partial);
  EXPECT_LE(split.rows[0].avg_chars, split.rows[1].avg_chars);
}

TEST(Length, EqualLengthsGiveConstantAverage) {
  auto corpus = parse_bitext("ab ||| cd\nef ||| gh\nij ||| kl\nmn ||| op\n");
  std::vector<Method> methods;
  auto rep = length_analysis(corpus, {}, 2, methods);
  EXPECT_EQ(rep.rows[0].avg_chars, rep.rows[1].avg_chars);
  EXPECT_EQ(length_groups(corpus, 2)[0], (std::vector<std::size_t>{0, 1}));
}

// Gold with 20 sure links per pair; predictions carry 13 hits and 7 misses,
// so every pair (and the whole set) has AER 1 - 26/40 = 0.35.
std::pair<AlignmentSet, AlignmentSet> constant_aer_pair(std::size_t pairs) {
  AlignmentSet pred, gold;
  for (std::size_t k = 0; k < pairs; ++k) {
    LinkSet g, p;
    for (std::size_t i = 0; i < 20; ++i) g.insert({i, i});
    for (std::size_t i = 0; i < 13; ++i) p.insert({i, i});
    for (std::size_t i = 0; i < 7; ++i) p.insert({i, i + 1});
    gold.push_back(SentenceAlignment::sure_only(g));
    pred.push_back(SentenceAlignment::sure_only(p));
  }
  return {pred, gold};
}

TEST(Bootstrap, FullSizeSamplesHaveNoSpread) {
  auto [pred, gold] = constant_aer_pair(50);
  pred[3] = SentenceAlignment{};
  auto s = bootstrap_aer(pred, gold, 100, 50, 1);
  EXPECT_NEAR(s.std_dev, 0.0, 1e-12);
  EXPECT_NEAR(s.mean, s.whole_set, 1e-12);
}

TEST(Bootstrap, SummaryInvariants) {
  auto syn = oracle::diagonal_bitext(248, 30, 4.0, 0.08, 29);
  auto pred = ibm::decode(syn.corpus, ibm::train(syn.corpus, ibm::Direction::Forward, {}).model(),
                          ibm::Direction::Forward);
  auto s = bootstrap_aer(pred, syn.gold, 100, 50, 7);
  EXPECT_EQ(s.samples.size(), 100u);
  EXPECT_LE(s.min, s.q25);
  EXPECT_LE(s.q25, s.q50);
  EXPECT_LE(s.q50, s.q75);
  EXPECT_LE(s.q75, s.max);
  EXPECT_GE(s.mean, s.min);
  EXPECT_LE(s.mean, s.max);
  EXPECT_GE(s.std_dev, 0.0);
  auto again = bootstrap_aer(pred, syn.gold, 100, 50, 7);
  EXPECT_EQ(again.samples, s.samples);
  EXPECT_EQ(bootstrap_tsv("diag", s), bootstrap_tsv("diag", again));
  EXPECT_THROW(bootstrap_aer(pred, syn.gold, 100, 249, 7), DataError);
}

TEST(Bootstrap, TableLayout) {
  auto [pred, gold] = constant_aer_pair(60);
  auto s = bootstrap_aer(pred, gold, 10, 50, 2);
  const auto tsv = bootstrap_tsv("FastAlign", s);
  EXPECT_NE(tsv.find("method\twhole_set_aer\tavg_aer\taer_std\tmin_aer\t25%\t50%\t75%\tmax_aer\n"), std::string::npos);
  EXPECT_NE(tsv.find("FastAlign\t35.00\t35.00\t0.00\t35.00\t35.00\t35.00\t35.00\t35.00\n"), std::string::npos);
  EXPECT_EQ(tsv.rfind("# bootstrap analysis", 0), 0u);
}

}  // namespace
}  // namespace walign::analysis
