#include <gtest/gtest.h>

#include <random>

#include "walign/metrics.hpp"

namespace walign {
namespace {

AlignmentSet one(LinkSet s) { return {SentenceAlignment::sure_only(std::move(s))}; }

TEST(Evaluate, PerfectPrediction) {
  auto g = one({{0, 0}, {1, 1}});
  auto r = evaluate(g, g);
  EXPECT_EQ(r.aer, 0.0);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.f_measure, 1.0);
}

TEST(Evaluate, SureOnlyHandExample) {
  auto r = evaluate(one({{0, 0}, {1, 1}, {2, 2}}), one({{0, 0}, {1, 2}}));
  EXPECT_NEAR(r.precision, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.recall, 0.5, 1e-12);
  EXPECT_NEAR(r.f_measure, 0.4, 1e-12);
  EXPECT_NEAR(r.aer, 0.6, 1e-12);
}

TEST(Evaluate, PossibleLinksHandExample) {
  SentenceAlignment gold;
  gold.add_sure({0, 0});
  gold.add_sure({2, 1});
  gold.add_possible({1, 1});
  auto r = evaluate(one({{0, 0}, {1, 1}, {1, 2}}), {gold});
  EXPECT_NEAR(r.aer, 0.4, 1e-12);
  EXPECT_EQ(r.counts.hit_sure, 1u);
  EXPECT_EQ(r.counts.hit_possible, 2u);
}

TEST(Evaluate, EmptyDenominators) {
  auto r = evaluate(one({}), one({}));
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.aer, 0.0);
  auto miss = evaluate(one({{0, 1}}), one({{0, 0}}));
  EXPECT_EQ(miss.precision, 0.0);
  EXPECT_EQ(miss.recall, 0.0);
  EXPECT_EQ(miss.f_measure, 0.0);
  EXPECT_EQ(miss.aer, 1.0);
}

TEST(Evaluate, PairCountMismatch) { EXPECT_THROW(evaluate(one({}), {}), DataError); }

TEST(Evaluate, CorpusAggregationNotMeanOfSentences) {
  AlignmentSet pred{SentenceAlignment::sure_only({{0, 0}}), SentenceAlignment::sure_only({{0, 0}, {1, 1}, {2, 2}})};
  AlignmentSet gold{SentenceAlignment::sure_only({{0, 0}}), SentenceAlignment::sure_only({{0, 1}})};
  // counts: A = 4, S = 2, A∩S = 1 -> AER = 1 - 2/6.
  EXPECT_NEAR(evaluate(pred, gold).aer, 1.0 - 2.0 / 6.0, 1e-12);
}

TEST(Evaluate, PropertiesOnRandomInstances) {
  std::mt19937_64 g(23);
  for (int trial = 0; trial < 1000; ++trial) {
    AlignmentSet pred(3), gold(3);
    for (std::size_t k = 0; k < 3; ++k) {
      for (int l = 0; l < 6; ++l) pred[k].add_sure({g() % 4, g() % 4});
      for (int l = 0; l < 5; ++l) gold[k].add_sure({g() % 4, g() % 4});
      if (trial % 2)
        for (int l = 0; l < 3; ++l) gold[k].add_possible({g() % 4, g() % 4});
    }
    const auto r = evaluate(pred, gold);
    for (double v : {r.aer, r.precision, r.recall, r.f_measure}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_LE(r.counts.hit_sure, r.counts.hit_possible);
    if (trial % 2 == 0) {
      EXPECT_NEAR(r.aer, 1.0 - r.f_measure, 1e-12);
    }

    // Adding a sure gold link never raises AER; dropping a link outside P never raises it.
    for (std::size_t k = 0; k < 3; ++k) {
      for (const Link& l : gold[k].sure()) {
        AlignmentSet more = pred;
        more[k].add_sure(l);
        EXPECT_LE(evaluate(more, gold).aer, r.aer + 1e-15);
      }
      for (const Link& l : pred[k].sure()) {
        if (gold[k].possible().count(l)) continue;
        LinkSet kept = pred[k].sure();
        kept.erase(l);
        AlignmentSet fewer = pred;
        fewer[k] = SentenceAlignment::sure_only(kept);
        EXPECT_LE(evaluate(fewer, gold).aer, r.aer + 1e-15);
      }
    }
  }
}

TEST(ReportTable, FormatsPercentagesAndGaps) {
  EvalReport a, b, c;
  a.aer = 0.4771;
  b.aer = 0.5229;
  c.aer = 0.25;
  ReportGrid grid{{"mBERT+TLM", {{"gn", a}, {"quy", b}}}, {"FastAlign", {{"gn", c}}}};
  const auto t = report_table(grid);
  EXPECT_EQ(t,
            "method\tgn\tquy\tavg\n"
            "FastAlign\t25.00\t-\t25.00\n"
            "mBERT+TLM\t47.71\t52.29\t50.00\n");
  EXPECT_THROW(report_table({}), DataError);
}

TEST(Report, JsonCarriesCounts) {
  auto r = evaluate(one({{0, 0}, {1, 1}, {2, 2}}), one({{0, 0}, {1, 2}}));
  auto j = to_json(r);
  EXPECT_EQ(j["counts"]["A"], 3);
  EXPECT_EQ(j["counts"]["A_and_S"], 1);
}

}  // namespace
}  // namespace walign
