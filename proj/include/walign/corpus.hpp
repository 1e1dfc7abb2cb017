#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "walign/error.hpp"
#include "walign/text.hpp"

namespace walign {

using Sentence = std::vector<std::string>;

struct SentencePair {
  std::size_t id = 0;
  Sentence src;
  Sentence tgt;
};

/// Ordered, line-aligned sentence pairs. Pair ids equal their 0-based position.
class ParallelCorpus {
 public:
  ParallelCorpus() = default;

  /// Appends a pair, assigning the next id. Enforces token invariants.
  void add(Sentence src, Sentence tgt) {
    check_side(src, "source");
    check_side(tgt, "target");
    pairs_.push_back({pairs_.size(), std::move(src), std::move(tgt)});
  }

  const std::vector<SentencePair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const SentencePair& operator[](std::size_t k) const { return pairs_[k]; }

  /// Source and target roles exchanged; used for reverse-direction training.
  ParallelCorpus swapped() const {
    ParallelCorpus out;
    out.pairs_.reserve(pairs_.size());
    for (const auto& p : pairs_) out.pairs_.push_back({p.id, p.tgt, p.src});
    return out;
  }

  /// The pairs at `indices` (in the given order), renumbered from 0.
  ParallelCorpus select(const std::vector<std::size_t>& indices) const {
    ParallelCorpus out;
    out.pairs_.reserve(indices.size());
    for (std::size_t k : indices) out.pairs_.push_back({out.pairs_.size(), pairs_.at(k).src, pairs_.at(k).tgt});
    return out;
  }

  void append(const ParallelCorpus& other) {
    for (const auto& p : other.pairs_) pairs_.push_back({pairs_.size(), p.src, p.tgt});
  }

 private:
  static void check_side(const Sentence& s, const char* side) {
    if (s.empty()) throw DataError(std::string("empty ") + side + " side");
    for (const auto& tok : s) {
      if (tok.empty()) throw DataError(std::string("blank token on ") + side + " side");
      for (char c : tok)
        if (text::is_space(c)) throw DataError("token contains whitespace: '" + tok + "'");
    }
  }

  std::vector<SentencePair> pairs_;
};

namespace detail {

inline Sentence tokenize_side(std::string_view side, std::size_t line, const char* which) {
  if (side.empty()) throw ParseError(std::string("empty ") + which + " side", line);
  Sentence toks;
  std::size_t start = 0;
  while (true) {
    std::size_t end = side.find(' ', start);
    std::string_view tok = side.substr(start, end == std::string_view::npos ? side.npos : end - start);
    if (tok.empty()) throw ParseError(std::string("blank token on ") + which + " side", line);
    for (char c : tok)
      if (text::is_space(c)) throw ParseError(std::string("non-space whitespace on ") + which + " side", line);
    toks.emplace_back(tok);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return toks;
}

}  // namespace detail

/// Parses `source tokens ||| target tokens` lines (single-space tokenization).
inline ParallelCorpus parse_bitext(std::string_view content) {
  ParallelCorpus corpus;
  auto lines = text::split_lines(content);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::size_t lineno = k + 1;
    std::string_view line = lines[k];
    std::size_t sep = line.find("|||");
    if (sep == std::string_view::npos) throw ParseError("missing '|||' separator", lineno);
    if (line.find("|||", sep + 3) != std::string_view::npos)
      throw ParseError("more than one '|||' separator", lineno);
    std::string_view left = line.substr(0, sep);
    std::string_view right = line.substr(sep + 3);
    if (!left.empty() && left.back() == ' ') left.remove_suffix(1);
    if (!right.empty() && right.front() == ' ') right.remove_prefix(1);
    Sentence src = detail::tokenize_side(left, lineno, "source");
    Sentence tgt = detail::tokenize_side(right, lineno, "target");
    corpus.add(std::move(src), std::move(tgt));
  }
  return corpus;
}

inline std::string join(const Sentence& s, char sep = ' ') {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += sep;
    out += s[i];
  }
  return out;
}

inline std::string serialize_bitext(const ParallelCorpus& corpus) {
  std::string out;
  for (const auto& p : corpus.pairs()) {
    out += join(p.src);
    out += " ||| ";
    out += join(p.tgt);
    out += '\n';
  }
  return out;
}

}  // namespace walign
