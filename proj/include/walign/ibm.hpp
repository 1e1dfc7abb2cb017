#pragma once

// IBM Model 1 and the diagonal-tension reparameterization of Model 2.
//
// The distortion prior over source positions i = 1..n for target position
// j = 1..m of an n x m pair is
//
//   delta(0 | j, n, m) = p0
//   delta(i | j, n, m) = (1 - p0) * exp(lambda * h(i, j, n, m)) / Z(j, n, m)
//   h(i, j, n, m)      = -| i/n - j/m |
//
// Model 1 replaces the exponential with a uniform (1 - p0) / n.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "walign/alignment.hpp"
#include "walign/corpus.hpp"
#include "walign/error.hpp"
#include "walign/parallel.hpp"
#include "walign/text.hpp"

namespace walign::ibm {

enum class ModelKind { Model1, Diagonal };
enum class Direction { Forward, Reverse };

inline const char* to_string(ModelKind k) { return k == ModelKind::Model1 ? "ibm1" : "diag"; }

inline ModelKind parse_model_kind(std::string_view s) {
  if (s == "ibm1") return ModelKind::Model1;
  if (s == "diag") return ModelKind::Diagonal;
  throw DataError("unknown model kind '" + std::string(s) + "'");
}

struct DiagonalParams {
  ModelKind kind = ModelKind::Diagonal;
  double lambda = 4.0;  // tension; ignored for Model1
  double p0 = 0.08;     // NULL link probability
};

struct TrainConfig {
  ModelKind kind = ModelKind::Diagonal;
  int iterations = 5;
  double alpha = 0.01;  // add-alpha smoothing in the M-step
  double initial_lambda = 4.0;
  double p0 = 0.08;
  bool lambda_search = true;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

inline constexpr double kLambdaMin = 0.0;
inline constexpr double kLambdaMax = 20.0;
inline constexpr double kLambdaTolerance = 1e-3;

/// Reserved vocabulary entries used by the model file format.
inline constexpr std::string_view kNullWord = "<null>";
inline constexpr std::string_view kFloorWord = "<floor>";

inline double position_offset(std::size_t i, std::size_t j, std::size_t n, std::size_t m) {
  return -std::abs(static_cast<double>(i) / static_cast<double>(n) -
                   static_cast<double>(j) / static_cast<double>(m));
}

/// Fills out[0..n] with delta(i | j, n, m) for i = 0..n (i = 0 is NULL).
inline void diag_row(std::size_t j, std::size_t n, std::size_t m, const DiagonalParams& params,
                     std::span<double> out) {
  if (j < 1 || j > m) throw std::out_of_range("target position " + std::to_string(j) + " outside 1.." + std::to_string(m));
  out[0] = params.p0;
  if (params.kind == ModelKind::Model1) {
    for (std::size_t i = 1; i <= n; ++i) out[i] = (1.0 - params.p0) / static_cast<double>(n);
    return;
  }
  double z = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    out[i] = std::exp(params.lambda * position_offset(i, j, n, m));
    z += out[i];
  }
  for (std::size_t i = 1; i <= n; ++i) out[i] = (1.0 - params.p0) * out[i] / z;
}

/// delta(i | j, n, m) for 1-based j; i = 0 is the NULL word.
inline double diag_weight(std::size_t i, std::size_t j, std::size_t n, std::size_t m,
                          const DiagonalParams& params) {
  if (i > n) throw std::out_of_range("source position " + std::to_string(i) + " outside 0.." + std::to_string(n));
  std::vector<double> row(n + 1);
  diag_row(j, n, m, params, row);
  return row[i];
}

/// log Z(j, n, m) for the exponential part of the diagonal prior.
inline double log_partition(double lambda, std::size_t j, std::size_t n, std::size_t m) {
  double z = 0.0;
  for (std::size_t i = 1; i <= n; ++i) z += std::exp(lambda * position_offset(i, j, n, m));
  return std::log(z);
}

class Vocab {
 public:
  static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

  std::uint32_t intern(std::string_view w) {
    auto it = ids_.find(std::string(w));
    if (it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(words_.size());
    words_.emplace_back(w);
    ids_.emplace(words_.back(), id);
    return id;
  }
  std::uint32_t find(std::string_view w) const {
    auto it = ids_.find(std::string(w));
    return it == ids_.end() ? npos : it->second;
  }
  const std::string& word(std::uint32_t id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> words_;
};

/// Sparse t(f | e). Source id 0 is the NULL word. Each stored row sums to
/// one; pairs never seen together fall back to the row's smoothing floor.
class TranslationTable {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  static constexpr std::uint32_t kNull = 0;

  TranslationTable() { src_.intern(kNullWord); }

  const Vocab& source_vocab() const { return src_; }
  const Vocab& target_vocab() const { return tgt_; }
  std::size_t num_entries() const { return cols_.size(); }
  std::size_t num_rows() const { return src_.size(); }

  /// Index of (e, f) in the entry arrays, or npos.
  std::size_t find(std::uint32_t e, std::uint32_t f) const {
    if (e >= src_.size() || f == Vocab::npos) return npos;
    auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_begin_[e]);
    auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_begin_[e + 1]);
    auto it = std::lower_bound(first, last, f);
    if (it == last || *it != f) return npos;
    return static_cast<std::size_t>(it - cols_.begin());
  }

  /// t(f | e) by id; unseen pairs of a known row get the row floor, an
  /// unknown source word gets zero.
  double prob(std::uint32_t e, std::uint32_t f) const {
    if (e == Vocab::npos || e >= src_.size()) return 0.0;
    std::size_t k = find(e, f);
    return k == npos ? floor_[e] : probs_[k];
  }

  double prob(std::string_view e, std::string_view f) const {
    return prob(src_.find(e), tgt_.find(f));
  }
  double null_prob(std::string_view f) const { return prob(kNull, tgt_.find(f)); }

  double row_sum(std::uint32_t e) const {
    double s = 0.0;
    for (std::size_t k = row_begin_[e]; k < row_begin_[e + 1]; ++k) s += probs_[k];
    return s;
  }
  double row_floor(std::uint32_t e) const { return floor_[e]; }

  std::span<const std::uint32_t> row_cols(std::uint32_t e) const {
    return {cols_.data() + row_begin_[e], row_begin_[e + 1] - row_begin_[e]};
  }
  std::span<const double> row_probs(std::uint32_t e) const {
    return {probs_.data() + row_begin_[e], row_begin_[e + 1] - row_begin_[e]};
  }

  friend bool operator==(const TranslationTable& a, const TranslationTable& b) {
    return a.row_begin_ == b.row_begin_ && a.cols_ == b.cols_ && a.probs_ == b.probs_ &&
           a.floor_ == b.floor_;
  }

 private:
  friend class Trainer;
  friend TranslationTable table_from_triples(
      std::vector<std::tuple<std::string, std::string, double>>);

  Vocab src_;
  Vocab tgt_;
  std::vector<std::size_t> row_begin_{0, 0};
  std::vector<std::uint32_t> cols_;
  std::vector<double> probs_;
  std::vector<double> floor_{0.0};
};

struct Model {
  TranslationTable table;
  DiagonalParams params;
};

struct TrainResult {
  TranslationTable table;
  DiagonalParams params;
  std::vector<double> ll_trace;  // corpus log-likelihood at the start of each iteration

  Model model() const { return {table, params}; }
};

/// EM trainer over a corpus oriented as (source = conditioning side).
class Trainer {
 public:
  Trainer(const ParallelCorpus& corpus, const TrainConfig& config) : config_(config) {
    if (corpus.empty()) throw DataError("cannot train on an empty corpus");
    if (config.iterations < 1) throw DataError("iteration budget must be at least 1");
    if (config.alpha < 0) throw DataError("smoothing alpha must be non-negative");
    if (!(config.p0 >= 0.0 && config.p0 < 1.0)) throw DataError("p0 must lie in [0, 1)");
    if (!(config.initial_lambda >= kLambdaMin && config.initial_lambda <= kLambdaMax))
      throw DataError("initial lambda must lie in [0, 20]");
    params_ = {config.kind, config.kind == ModelKind::Model1 ? 0.0 : config.initial_lambda, config.p0};
    compile(corpus);
  }

  TrainResult run() {
    TrainResult res;
    for (int it = 0; it < config_.iterations; ++it) {
      res.ll_trace.push_back(expectation());
      maximization();
      if (config_.kind == ModelKind::Diagonal && config_.lambda_search) refit_lambda();
    }
    res.table = table_;
    res.params = params_;
    return res;
  }

 private:
  struct Shape {
    std::size_t n, m;
    friend auto operator<=>(const Shape&, const Shape&) = default;
  };

  void compile(const ParallelCorpus& corpus) {
    TranslationTable& t = table_;
    sentences_.reserve(corpus.size());
    std::vector<std::uint64_t> keys;
    for (const auto& p : corpus.pairs()) {
      Sent s;
      s.e.push_back(TranslationTable::kNull);
      for (const auto& w : p.src) {
        if (w == kNullWord) throw DataError("source token '" + w + "' is reserved");
        s.e.push_back(t.src_.intern(w));
      }
      for (const auto& w : p.tgt) {
        if (w == kFloorWord) throw DataError("target token '" + w + "' is reserved");
        s.f.push_back(t.tgt_.intern(w));
      }
      for (auto f : s.f)
        for (auto e : s.e) keys.push_back((std::uint64_t{e} << 32) | f);
      sentences_.push_back(std::move(s));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    t.row_begin_.assign(t.src_.size() + 1, 0);
    t.cols_.resize(keys.size());
    for (std::size_t k = 0; k < keys.size(); ++k) {
      auto e = static_cast<std::uint32_t>(keys[k] >> 32);
      t.cols_[k] = static_cast<std::uint32_t>(keys[k] & 0xffffffffu);
      ++t.row_begin_[e + 1];
    }
    for (std::size_t e = 0; e < t.src_.size(); ++e) t.row_begin_[e + 1] += t.row_begin_[e];
    t.probs_.resize(keys.size());
    t.floor_.assign(t.src_.size(), 0.0);
    for (std::size_t e = 0; e < t.src_.size(); ++e) {
      const std::size_t width = t.row_begin_[e + 1] - t.row_begin_[e];
      for (std::size_t k = t.row_begin_[e]; k < t.row_begin_[e + 1]; ++k)
        t.probs_[k] = 1.0 / static_cast<double>(width);
    }

    std::size_t offset = 0, tpos = 0;
    for (auto& s : sentences_) {
      s.cell_offset = offset;
      s.target_offset = tpos;
      offset += s.f.size() * s.e.size();
      tpos += s.f.size();
      shapes_.emplace(Shape{s.e.size() - 1, s.f.size()}, std::vector<double>{});
    }
    cells_.resize(offset);
    posterior_.resize(offset);
    nonnull_mass_.resize(tpos);
    sentence_ll_.resize(sentences_.size());
    sentence_h_.resize(sentences_.size());
    parallel_for(sentences_.size(), config_.workers, [&](std::size_t k) {
      const Sent& s = sentences_[k];
      std::size_t c = s.cell_offset;
      for (auto f : s.f)
        for (auto e : s.e) cells_[c++] = t.find(e, f);
    });
    counts_.assign(t.cols_.size(), 0.0);
    rebuild_distortion();
  }

  void rebuild_distortion() {
    for (auto& [shape, table] : shapes_) {
      const auto [n, m] = shape;
      table.resize(m * (n + 1));
      for (std::size_t j = 1; j <= m; ++j)
        diag_row(j, n, m, params_, std::span<double>(table.data() + (j - 1) * (n + 1), n + 1));
    }
  }

  // Posteriors go to per-cell slots in parallel; the reduction below runs
  // sequentially in corpus order, so results do not depend on worker count.
  double expectation() {
    const bool want_h = config_.kind == ModelKind::Diagonal && config_.lambda_search;
    parallel_for(sentences_.size(), config_.workers, [&](std::size_t k) {
      const Sent& s = sentences_[k];
      const std::size_t n = s.e.size() - 1, m = s.f.size();
      const std::vector<double>& delta = shapes_.find(Shape{n, m})->second;
      double ll = 0.0, h = 0.0;
      std::size_t c = s.cell_offset;
      for (std::size_t j = 0; j < m; ++j, c += n + 1) {
        const double* d = delta.data() + j * (n + 1);
        double* post = posterior_.data() + c;
        double total = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
          post[i] = table_.probs_[cells_[c + i]] * d[i];
          total += post[i];
        }
        double mass = 0.0;
        if (total > 0.0) {
          ll += std::log(total);
          for (std::size_t i = 0; i <= n; ++i) post[i] /= total;
          for (std::size_t i = 1; i <= n; ++i) mass += post[i];
          if (want_h)
            for (std::size_t i = 1; i <= n; ++i) h += post[i] * position_offset(i, j + 1, n, m);
        } else {
          ll += -std::numeric_limits<double>::infinity();
          for (std::size_t i = 0; i <= n; ++i) post[i] = 0.0;
        }
        nonnull_mass_[s.target_offset + j] = mass;
      }
      sentence_ll_[k] = ll;
      sentence_h_[k] = h;
    });

    std::fill(counts_.begin(), counts_.end(), 0.0);
    for (std::size_t c = 0; c < cells_.size(); ++c) counts_[cells_[c]] += posterior_[c];
    double ll = 0.0;
    for (double v : sentence_ll_) ll += v;
    if (want_h) {
      expected_offset_ = 0.0;
      for (double v : sentence_h_) expected_offset_ += v;
      mass_by_shape_.clear();
      for (const Sent& s : sentences_) {
        auto& w = mass_by_shape_[Shape{s.e.size() - 1, s.f.size()}];
        w.resize(s.f.size(), 0.0);
        for (std::size_t j = 0; j < s.f.size(); ++j) w[j] += nonnull_mass_[s.target_offset + j];
      }
    }
    return ll;
  }

  void maximization() {
    TranslationTable& t = table_;
    for (std::size_t e = 0; e < t.src_.size(); ++e) {
      const std::size_t lo = t.row_begin_[e], hi = t.row_begin_[e + 1];
      double total = 0.0;
      for (std::size_t k = lo; k < hi; ++k) total += counts_[k];
      const double denom = total + config_.alpha * static_cast<double>(hi - lo);
      if (!(denom > 0.0)) continue;  // row received no mass (e.g. NULL with p0 = 0)
      for (std::size_t k = lo; k < hi; ++k) t.probs_[k] = (counts_[k] + config_.alpha) / denom;
      t.floor_[e] = config_.alpha / denom;
    }
  }

  // Expected complete-data log prior as a function of lambda, up to terms
  // constant in lambda. Concave, so golden-section search finds its maximum.
  double lambda_objective(double lambda) const {
    double v = lambda * expected_offset_;
    for (const auto& [shape, w] : mass_by_shape_)
      for (std::size_t j = 0; j < w.size(); ++j)
        if (w[j] != 0.0) v -= w[j] * log_partition(lambda, j + 1, shape.n, shape.m);
    return v;
  }

  void refit_lambda() {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = kLambdaMin, hi = kLambdaMax;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = lambda_objective(x1), f2 = lambda_objective(x2);
    while (hi - lo > kLambdaTolerance) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = lambda_objective(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = lambda_objective(x1);
      }
    }
    const double candidate = 0.5 * (lo + hi);
    // Never accept a step that lowers the objective (keeps EM monotone).
    if (lambda_objective(candidate) >= lambda_objective(params_.lambda)) params_.lambda = candidate;
    rebuild_distortion();
  }

  struct Sent {
    std::vector<std::uint32_t> e;  // e[0] is NULL
    std::vector<std::uint32_t> f;
    std::size_t cell_offset = 0;    // cells laid out j-major, (n + 1) per target word
    std::size_t target_offset = 0;
  };

  TrainConfig config_;
  DiagonalParams params_;
  TranslationTable table_;
  std::vector<Sent> sentences_;
  std::vector<std::size_t> cells_;
  std::vector<double> posterior_;
  std::vector<double> counts_;
  std::vector<double> nonnull_mass_;
  std::vector<double> sentence_ll_;
  std::vector<double> sentence_h_;
  std::map<Shape, std::vector<double>> shapes_;
  std::map<Shape, std::vector<double>> mass_by_shape_;
  double expected_offset_ = 0.0;
};

/// Trains in the given direction; Reverse conditions on the target side.
inline TrainResult train(const ParallelCorpus& corpus, Direction direction, const TrainConfig& config) {
  if (direction == Direction::Reverse) return Trainer(corpus.swapped(), config).run();
  return Trainer(corpus, config).run();
}

/// Viterbi links of one pair oriented as (conditioning side, generated side).
inline LinkSet viterbi(const Sentence& src, const Sentence& tgt, const Model& model) {
  const TranslationTable& t = model.table;
  const std::size_t n = src.size(), m = tgt.size();
  std::vector<std::uint32_t> e(n + 1, TranslationTable::kNull);
  for (std::size_t i = 0; i < n; ++i) e[i + 1] = t.source_vocab().find(src[i]);
  std::vector<double> delta(n + 1);
  LinkSet links;
  for (std::size_t j = 0; j < m; ++j) {
    diag_row(j + 1, n, m, model.params, delta);
    const std::uint32_t f = t.target_vocab().find(tgt[j]);
    std::size_t best_i = 0;
    double best = t.prob(e[0], f) * delta[0];
    for (std::size_t i = 1; i <= n; ++i) {
      const double v = t.prob(e[i], f) * delta[i];
      if (v > best) {  // ties keep the smaller i
        best = v;
        best_i = i;
      }
    }
    if (best_i > 0) links.insert({best_i - 1, j});
  }
  return links;
}

/// Decodes every pair. Links are always returned in (source, target)
/// orientation; a Reverse model is applied with roles swapped and its
/// output transposed back.
inline AlignmentSet decode(const ParallelCorpus& corpus, const Model& model, Direction direction,
                           unsigned workers = 1) {
  AlignmentSet out(corpus.size());
  parallel_for(corpus.size(), workers, [&](std::size_t k) {
    const auto& p = corpus[k];
    if (direction == Direction::Forward) {
      out[k] = SentenceAlignment::sure_only(viterbi(p.src, p.tgt, model));
    } else {
      LinkSet links;
      for (const Link& l : viterbi(p.tgt, p.src, model)) links.insert(l.transposed());
      out[k] = SentenceAlignment::sure_only(std::move(links));
    }
  });
  return out;
}

inline TranslationTable table_from_triples(std::vector<std::tuple<std::string, std::string, double>> triples) {
  TranslationTable t;
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> entries;
  std::map<std::uint32_t, double> floors;
  for (auto& [e, f, p] : triples) {
    const std::uint32_t ei = t.src_.intern(e);
    if (f == kFloorWord)
      floors[ei] = p;
    else
      entries[{ei, t.tgt_.intern(f)}] = p;
  }
  t.row_begin_.assign(t.src_.size() + 1, 0);
  t.floor_.assign(t.src_.size(), 0.0);
  for (auto& [k, p] : entries) {
    ++t.row_begin_[k.first + 1];
    t.cols_.push_back(k.second);
    t.probs_.push_back(p);
  }
  for (std::size_t e = 0; e < t.src_.size(); ++e) t.row_begin_[e + 1] += t.row_begin_[e];
  for (auto& [e, p] : floors) t.floor_[e] = p;
  return t;
}

/// Text model format: `MODEL <kind> <lambda> <p0>` then `e f t(f|e)` lines
/// sorted lexicographically. A row's smoothing floor is stored as the
/// reserved target word `<floor>`; the NULL source word is `<null>`.
inline std::string serialize_model(const Model& model) {
  const TranslationTable& t = model.table;
  std::vector<std::tuple<std::string_view, std::string_view, double>> rows;
  rows.reserve(t.num_entries() + t.num_rows());
  for (std::uint32_t e = 0; e < t.num_rows(); ++e) {
    auto cols = t.row_cols(e);
    auto probs = t.row_probs(e);
    for (std::size_t k = 0; k < cols.size(); ++k)
      rows.emplace_back(t.source_vocab().word(e), t.target_vocab().word(cols[k]), probs[k]);
    if (t.row_floor(e) > 0.0) rows.emplace_back(t.source_vocab().word(e), kFloorWord, t.row_floor(e));
  }
  std::sort(rows.begin(), rows.end());
  auto shortest = [](double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
  };
  std::string out = "MODEL ";
  out += to_string(model.params.kind);
  out += ' ' + shortest(model.params.lambda) + ' ' + shortest(model.params.p0) + '\n';
  for (const auto& [e, f, p] : rows) {
    out += e;
    out += ' ';
    out += f;
    out += ' ';
    out += shortest(p);
    out += '\n';
  }
  return out;
}

inline Model parse_model(std::string_view content) {
  auto lines = text::split_lines(content);
  if (lines.empty()) throw ParseError("empty model file");
  auto head = text::split_ws(lines[0]);
  if (head.size() != 4 || head[0] != "MODEL") throw ParseError("expected 'MODEL <kind> <lambda> <p0>' header", 1);
  Model model;
  try {
    model.params.kind = parse_model_kind(head[1]);
  } catch (const DataError& e) {
    throw ParseError(e.what(), 1);
  }
  auto lambda = text::parse_real(head[2]);
  auto p0 = text::parse_real(head[3]);
  if (!lambda || !p0) throw ParseError("bad lambda or p0 in header", 1);
  model.params.lambda = *lambda;
  model.params.p0 = *p0;
  std::vector<std::tuple<std::string, std::string, double>> triples;
  triples.reserve(lines.size());
  for (std::size_t k = 1; k < lines.size(); ++k) {
    auto f = text::split_ws(lines[k]);
    if (f.size() != 3) throw ParseError("expected 'e f prob'", k + 1);
    auto p = text::parse_real(f[2]);
    if (!p || *p < 0.0) throw ParseError("bad probability", k + 1);
    triples.emplace_back(std::string(f[0]), std::string(f[1]), *p);
  }
  model.table = table_from_triples(std::move(triples));
  return model;
}

}  // namespace walign::ibm
