#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "walign/alignment.hpp"
#include "walign/error.hpp"
#include "walign/text.hpp"

namespace walign {

/// Corpus-level link counts: A predicted, S sure gold, P possible gold.
struct LinkCounts {
  std::size_t predicted = 0;
  std::size_t sure = 0;
  std::size_t possible = 0;
  std::size_t hit_sure = 0;      // |A ∩ S|
  std::size_t hit_possible = 0;  // |A ∩ P|

  LinkCounts& operator+=(const LinkCounts& o) {
    predicted += o.predicted;
    sure += o.sure;
    possible += o.possible;
    hit_sure += o.hit_sure;
    hit_possible += o.hit_possible;
    return *this;
  }
};

struct EvalReport {
  double aer = 0.0;
  double precision = 1.0;
  double recall = 1.0;
  double f_measure = 0.0;
  LinkCounts counts;
};

inline LinkCounts count_links(const SentenceAlignment& pred, const SentenceAlignment& gold) {
  LinkCounts c;
  c.predicted = pred.sure().size();
  c.sure = gold.sure().size();
  c.possible = gold.possible().size();
  for (const Link& l : pred.sure()) {
    if (gold.sure().count(l)) ++c.hit_sure;
    if (gold.possible().count(l)) ++c.hit_possible;
  }
  return c;
}

/// Scores from aggregated counts. Empty denominators: no predictions gives
/// precision 1, no sure gold gives recall 1, P + R = 0 gives F 0, and
/// |A| + |S| = 0 gives AER 0.
inline EvalReport score(const LinkCounts& c) {
  EvalReport r;
  r.counts = c;
  const auto d = [](std::size_t v) { return static_cast<double>(v); };
  r.precision = c.predicted == 0 ? 1.0 : d(c.hit_possible) / d(c.predicted);
  r.recall = c.sure == 0 ? 1.0 : d(c.hit_sure) / d(c.sure);
  r.f_measure = r.precision + r.recall == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  r.aer = c.predicted + c.sure == 0 ? 0.0
                                     : 1.0 - d(c.hit_sure + c.hit_possible) / d(c.predicted + c.sure);
  return r;
}

/// AER, precision, recall and F of `pred` (its sure links) against `gold`,
/// summing counts over the corpus before dividing.
inline EvalReport evaluate(const AlignmentSet& pred, const AlignmentSet& gold) {
  if (pred.size() != gold.size())
    throw DataError("prediction has " + std::to_string(pred.size()) + " pairs, gold has " +
                    std::to_string(gold.size()));
  LinkCounts total;
  for (std::size_t k = 0; k < pred.size(); ++k) total += count_links(pred[k], gold[k]);
  return score(total);
}

inline nlohmann::json to_json(const EvalReport& r) {
  return {{"aer", r.aer},
          {"precision", r.precision},
          {"recall", r.recall},
          {"f_measure", r.f_measure},
          {"counts",
           {{"A", r.counts.predicted},
            {"S", r.counts.sure},
            {"P", r.counts.possible},
            {"A_and_S", r.counts.hit_sure},
            {"A_and_P", r.counts.hit_possible}}}};
}

inline std::string percent(double v) { return text::format_fixed(100.0 * v, 2); }

/// method -> language -> report
using ReportGrid = std::map<std::string, std::map<std::string, EvalReport>>;

/// TSV of AER percentages: one row per method, one column per language seen
/// anywhere in the grid, and a trailing unweighted average over the languages
/// the method was run on. Missing runs print `-`.
inline std::string report_table(const ReportGrid& reports) {
  if (reports.empty()) throw DataError("report table needs at least one method");
  std::set<std::string> langs;
  for (const auto& [method, row] : reports)
    for (const auto& [lang, r] : row) langs.insert(lang);
  std::string out = "method";
  for (const auto& l : langs) out += "\t" + l;
  out += "\tavg\n";
  for (const auto& [method, row] : reports) {
    out += method;
    double sum = 0.0;
    std::size_t present = 0;
    for (const auto& l : langs) {
      auto it = row.find(l);
      if (it == row.end()) {
        out += "\t-";
        continue;
      }
      out += "\t" + percent(it->second.aer);
      sum += it->second.aer;
      ++present;
    }
    out += "\t" + (present ? percent(sum / static_cast<double>(present)) : std::string("-"));
    out += '\n';
  }
  return out;
}

}  // namespace walign
