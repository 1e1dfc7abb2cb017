#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "walign/alignment.hpp"
#include "walign/corpus.hpp"
#include "walign/error.hpp"
#include "walign/metrics.hpp"
#include "walign/rng.hpp"
#include "walign/text.hpp"

namespace walign::analysis {

/// Trains on the given corpus and returns alignments for the fixed
/// evaluation pairs (line-aligned with the gold set).
using AlignFn = std::function<AlignmentSet(const ParallelCorpus& train)>;

struct Method {
  std::string name;
  AlignFn align;
};

struct Row {
  std::size_t examples = 0;     // training pairs in this condition
  double avg_chars = 0.0;       // length analysis only
  bool partial = false;         // length analysis: last group smaller than group_size
  std::vector<double> aer;      // one per method, in method order
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<std::string> methods;
  std::vector<Row> rows;
};

inline std::string header_line(const std::string& what, std::uint64_t seed) {
  return "# " + what + " seed=" + std::to_string(seed) + " rng=" + Rng::kName + "\n";
}

/// Nested random subsamples: the sample for each size is the prefix of one
/// seeded permutation, so smaller samples are contained in larger ones.
/// Returned index lists are sorted, so the full size reproduces the corpus.
inline std::vector<std::vector<std::size_t>> nested_samples(std::size_t corpus_size,
                                                            const std::vector<std::size_t>& sizes,
                                                            std::uint64_t seed) {
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] == 0) throw DataError("subset sizes must be positive");
    if (k && sizes[k] <= sizes[k - 1]) throw DataError("subset sizes must be strictly ascending");
  }
  if (!sizes.empty() && sizes.back() > corpus_size)
    throw DataError("subset size " + std::to_string(sizes.back()) + " exceeds corpus size " +
                    std::to_string(corpus_size));
  Rng rng(seed);
  const auto perm = rng.sample(corpus_size, sizes.empty() ? 0 : sizes.back());
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s : sizes) {
    std::vector<std::size_t> idx(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(s));
    std::sort(idx.begin(), idx.end());
    out.push_back(std::move(idx));
  }
  return out;
}

inline Report subset_analysis(const ParallelCorpus& corpus, const AlignmentSet& gold,
                              const std::vector<std::size_t>& sizes, const std::vector<Method>& methods,
                              std::uint64_t seed) {
  Report rep;
  rep.seed = seed;
  for (const auto& m : methods) rep.methods.push_back(m.name);
  for (const auto& idx : nested_samples(corpus.size(), sizes, seed)) {
    const ParallelCorpus sub = corpus.select(idx);
    Row row;
    row.examples = idx.size();
    for (const auto& m : methods) row.aer.push_back(evaluate(m.align(sub), gold).aer);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

/// Characters of a pair: code points of both sides, words joined by spaces.
inline std::size_t char_length(const SentencePair& p) {
  return text::utf8_length(join(p.src)) + text::utf8_length(join(p.tgt));
}

/// Pair indices ordered by character length (stable, so ties keep id order)
/// and cut into consecutive groups of `group_size`; the last may be short.
inline std::vector<std::vector<std::size_t>> length_groups(const ParallelCorpus& corpus, std::size_t group_size) {
  if (group_size == 0) throw DataError("group size must be at least 1");
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::size_t> len(corpus.size());
  for (std::size_t k = 0; k < corpus.size(); ++k) len[k] = char_length(corpus[k]);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return len[a] < len[b]; });
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < order.size(); k += group_size)
    groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(k),
                        order.begin() + static_cast<std::ptrdiff_t>(std::min(order.size(), k + group_size)));
  return groups;
}

inline Report length_analysis(const ParallelCorpus& corpus, const AlignmentSet& gold, std::size_t group_size,
                              const std::vector<Method>& methods) {
  Report rep;
  for (const auto& m : methods) rep.methods.push_back(m.name);
  for (const auto& idx : length_groups(corpus, group_size)) {
    Row row;
    row.examples = idx.size();
    row.partial = idx.size() < group_size;
    std::size_t chars = 0;
    for (std::size_t k : idx) chars += char_length(corpus[k]);
    row.avg_chars = static_cast<double>(chars) / static_cast<double>(idx.size());
    const ParallelCorpus group = corpus.select(idx);
    for (const auto& m : methods) row.aer.push_back(evaluate(m.align(group), gold).aer);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

struct BootstrapSummary {
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  std::size_t sample_size = 0;
  double whole_set = 0.0;
  double mean = 0.0;
  double std_dev = 0.0;  // population
  double min = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double max = 0.0;
  std::vector<double> samples;
};

/// Quantile of sorted data with linear interpolation between order statistics.
inline double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw DataError("quantile of empty data");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// AER over `n_samples` independent sentence subsets, each drawn without
/// replacement, summarized against the whole-set AER.
inline BootstrapSummary bootstrap_aer(const AlignmentSet& pred, const AlignmentSet& gold, std::size_t n_samples = 100,
                                      std::size_t sample_size = 50, std::uint64_t seed = 0) {
  if (pred.size() != gold.size()) throw DataError("prediction and gold differ in pair count");
  if (sample_size == 0 || sample_size > gold.size())
    throw DataError("sample size " + std::to_string(sample_size) + " must lie in 1.." + std::to_string(gold.size()));
  if (n_samples == 0) throw DataError("need at least one sample");

  std::vector<LinkCounts> per_pair(gold.size());
  LinkCounts whole;
  for (std::size_t k = 0; k < gold.size(); ++k) {
    per_pair[k] = count_links(pred[k], gold[k]);
    whole += per_pair[k];
  }

  BootstrapSummary s;
  s.seed = seed;
  s.n_samples = n_samples;
  s.sample_size = sample_size;
  s.whole_set = score(whole).aer;
  Rng rng(seed);
  for (std::size_t b = 0; b < n_samples; ++b) {
    LinkCounts c;
    for (std::size_t k : rng.sample(gold.size(), sample_size)) c += per_pair[k];
    s.samples.push_back(score(c).aer);
  }
  std::vector<double> sorted = s.samples;
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.q25 = quantile(sorted, 0.25);
  s.q50 = quantile(sorted, 0.50);
  s.q75 = quantile(sorted, 0.75);
  double sum = 0.0;
  for (double v : s.samples) sum += v;
  s.mean = std::clamp(sum / static_cast<double>(n_samples), s.min, s.max);
  double ss = 0.0;
  for (double v : s.samples) ss += (v - s.mean) * (v - s.mean);
  s.std_dev = std::sqrt(ss / static_cast<double>(n_samples));
  return s;
}

inline std::string subset_tsv(const Report& r) {
  std::string out = header_line("subset analysis", r.seed) + "examples";
  for (const auto& m : r.methods) out += "\t" + m;
  out += '\n';
  for (const auto& row : r.rows) {
    out += std::to_string(row.examples);
    for (double a : row.aer) out += "\t" + percent(a);
    out += '\n';
  }
  return out;
}

inline std::string length_tsv(const Report& r) {
  std::string out = "# length analysis\navg_chars\texamples\tpartial";
  for (const auto& m : r.methods) out += "\t" + m;
  out += '\n';
  for (const auto& row : r.rows) {
    out += text::format_fixed(row.avg_chars, 2) + "\t" + std::to_string(row.examples) + "\t" +
           (row.partial ? "1" : "0");
    for (double a : row.aer) out += "\t" + percent(a);
    out += '\n';
  }
  return out;
}

inline std::string bootstrap_tsv(const std::string& method, const BootstrapSummary& s) {
  std::string out = header_line("bootstrap analysis samples=" + std::to_string(s.n_samples) +
                                    " size=" + std::to_string(s.sample_size),
                                s.seed);
  out += "method\twhole_set_aer\tavg_aer\taer_std\tmin_aer\t25%\t50%\t75%\tmax_aer\n";
  out += method;
  for (double v : {s.whole_set, s.mean, s.std_dev, s.min, s.q25, s.q50, s.q75, s.max}) out += "\t" + percent(v);
  out += '\n';
  return out;
}

}  // namespace walign::analysis
