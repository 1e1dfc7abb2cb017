#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "walign/alignment.hpp"
#include "walign/embeddings.hpp"
#include "walign/error.hpp"
#include "walign/parallel.hpp"

namespace walign::embed {

enum class Aggregation { Any, All };

struct ExtractorConfig {
  double threshold = 0.001;  // c
  double temperature = 1.0;  // tau
  std::optional<int> layer;  // when set, inputs must come from this layer
  Aggregation aggregation = Aggregation::Any;

  void validate() const {
    if (!(threshold > 0.0 && threshold < 1.0)) throw DataError("threshold must lie in (0, 1)");
    if (!(temperature > 0.0)) throw DataError("temperature must be positive");
  }
};

/// Row-major rows x cols matrix.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  Matrix transposed() const {
    Matrix t(cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) t(c, r) = (*this)(r, c);
    return t;
  }
};

using SubwordLinks = std::set<std::pair<std::size_t, std::size_t>>;

namespace detail {

inline double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Softmax over `len` entries of `m` starting at `first` with the given
// stride. Row and column softmaxes share this code so that transposing the
// input transposes the result exactly.
inline void softmax(const double* first, std::size_t len, std::size_t stride, double tau, double* out,
                    std::size_t out_stride) {
  double mx = first[0];
  for (std::size_t k = 1; k < len; ++k) mx = std::max(mx, first[k * stride]);
  double z = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    out[k * out_stride] = std::exp((first[k * stride] - mx) / tau);
    z += out[k * out_stride];
  }
  for (std::size_t k = 0; k < len; ++k) out[k * out_stride] /= z;
}

}  // namespace detail

/// Cosine similarity of every source subword with every target subword.
inline Matrix similarity_matrix(const EmbeddedSentencePair& pair) {
  std::vector<double> src_norm, tgt_norm;
  for (const auto& s : pair.src_sub) {
    src_norm.push_back(detail::norm(s.vec));
    if (src_norm.back() == 0.0) throw DataError("zero vector for source subword '" + s.text + "'");
  }
  for (const auto& t : pair.tgt_sub) {
    tgt_norm.push_back(detail::norm(t.vec));
    if (tgt_norm.back() == 0.0) throw DataError("zero vector for target subword '" + t.text + "'");
  }
  Matrix c(pair.src_sub.size(), pair.tgt_sub.size());
  for (std::size_t u = 0; u < c.rows; ++u) {
    const auto& a = pair.src_sub[u].vec;
    for (std::size_t v = 0; v < c.cols; ++v) {
      const auto& b = pair.tgt_sub[v].vec;
      if (a.size() != b.size()) throw DataError("subword vectors differ in dimension");
      double dot = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) dot += a[k] * b[k];
      c(u, v) = std::clamp(dot / (src_norm[u] * tgt_norm[v]), -1.0, 1.0);
    }
  }
  return c;
}

/// Row-wise softmax (source -> target) of C / tau.
inline Matrix forward_probs(const Matrix& c, double tau) {
  Matrix p(c.rows, c.cols);
  for (std::size_t r = 0; r < c.rows; ++r)
    detail::softmax(&c.data[r * c.cols], c.cols, 1, tau, &p.data[r * c.cols], 1);
  return p;
}

/// Column-wise softmax (target -> source) of C / tau.
inline Matrix reverse_probs(const Matrix& c, double tau) {
  Matrix p(c.rows, c.cols);
  for (std::size_t col = 0; col < c.cols; ++col)
    detail::softmax(&c.data[col], c.rows, c.cols, tau, &p.data[col], c.cols);
  return p;
}

/// Subword pairs whose probability exceeds the threshold in both directions.
inline SubwordLinks extract_subword_links(const Matrix& c, const ExtractorConfig& config) {
  config.validate();
  SubwordLinks links;
  if (c.rows == 0 || c.cols == 0) return links;
  const Matrix fwd = forward_probs(c, config.temperature);
  const Matrix rev = reverse_probs(c, config.temperature);
  for (std::size_t u = 0; u < c.rows; ++u)
    for (std::size_t v = 0; v < c.cols; ++v)
      if (fwd(u, v) > config.threshold && rev(u, v) > config.threshold) links.insert({u, v});
  return links;
}

/// Maps subword links onto word links. Any: one linked subword pair links
/// the words. All: every subword pair of the two words must be linked.
inline SentenceAlignment aggregate_to_words(const SubwordLinks& sub_links, const EmbeddedSentencePair& pair,
                                            Aggregation rule) {
  LinkSet words;
  if (rule == Aggregation::Any) {
    for (auto [u, v] : sub_links) words.insert({pair.src_sub.at(u).word_index, pair.tgt_sub.at(v).word_index});
    return SentenceAlignment::sure_only(std::move(words));
  }
  // All: a word pair survives when its linked subword pairs equal its full block.
  std::map<Link, std::size_t> linked;
  for (auto [u, v] : sub_links) ++linked[{pair.src_sub.at(u).word_index, pair.tgt_sub.at(v).word_index}];
  std::vector<std::size_t> src_width(pair.n_src_words, 0), tgt_width(pair.n_tgt_words, 0);
  for (const auto& s : pair.src_sub) ++src_width.at(s.word_index);
  for (const auto& t : pair.tgt_sub) ++tgt_width.at(t.word_index);
  for (const auto& [l, count] : linked)
    if (count == src_width[l.src] * tgt_width[l.tgt]) words.insert(l);
  return SentenceAlignment::sure_only(std::move(words));
}

inline SentenceAlignment align_pair(const EmbeddedSentencePair& pair, const ExtractorConfig& config) {
  if (config.layer && *config.layer != pair.layer)
    throw DataError("embeddings come from layer " + std::to_string(pair.layer) + ", expected " +
                    std::to_string(*config.layer));
  return aggregate_to_words(extract_subword_links(similarity_matrix(pair), config), pair, config.aggregation);
}

/// Aligns every pair, order preserved.
inline AlignmentSet align(const std::vector<EmbeddedSentencePair>& pairs, const ExtractorConfig& config,
                          unsigned workers = 1) {
  config.validate();
  AlignmentSet out(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t k) { out[k] = align_pair(pairs[k], config); });
  return out;
}

}  // namespace walign::embed
