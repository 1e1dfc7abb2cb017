#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "walign/corpus.hpp"
#include "walign/error.hpp"
#include "walign/text.hpp"

namespace walign {

/// A word link: 0-based source index `src`, 0-based target index `tgt`.
struct Link {
  std::size_t src = 0;
  std::size_t tgt = 0;

  friend auto operator<=>(const Link&, const Link&) = default;
  Link transposed() const { return {tgt, src}; }
};

using LinkSet = std::set<Link>;

/// Links of one sentence pair. `possible()` always contains `sure()`.
class SentenceAlignment {
 public:
  SentenceAlignment() = default;

  static SentenceAlignment sure_only(LinkSet links) {
    SentenceAlignment a;
    a.possible_ = links;
    a.sure_ = std::move(links);
    return a;
  }

  void add_sure(Link l) {
    sure_.insert(l);
    possible_.insert(l);
  }
  void add_possible(Link l) { possible_.insert(l); }

  const LinkSet& sure() const { return sure_; }
  const LinkSet& possible() const { return possible_; }
  bool empty() const { return possible_.empty(); }

  SentenceAlignment transposed() const {
    SentenceAlignment out;
    for (const Link& l : sure_) out.sure_.insert(l.transposed());
    for (const Link& l : possible_) out.possible_.insert(l.transposed());
    return out;
  }

  /// Throws DataError unless every link lies inside an n x m grid.
  void check_bounds(std::size_t n, std::size_t m) const {
    for (const Link& l : possible_)
      if (l.src >= n || l.tgt >= m)
        throw DataError("link " + std::to_string(l.src) + "-" + std::to_string(l.tgt) +
                        " outside " + std::to_string(n) + "x" + std::to_string(m) + " sentence pair");
  }

  friend bool operator==(const SentenceAlignment&, const SentenceAlignment&) = default;

 private:
  LinkSet sure_;
  LinkSet possible_;
};

/// Per-sentence alignments, line-aligned with a ParallelCorpus.
using AlignmentSet = std::vector<SentenceAlignment>;

inline void check_bounds(const AlignmentSet& a, const ParallelCorpus& corpus) {
  if (a.size() != corpus.size())
    throw DataError("alignment has " + std::to_string(a.size()) + " lines but corpus has " +
                    std::to_string(corpus.size()) + " pairs");
  for (std::size_t k = 0; k < a.size(); ++k) {
    try {
      a[k].check_bounds(corpus[k].src.size(), corpus[k].tgt.size());
    } catch (const DataError& e) {
      throw DataError("pair " + std::to_string(k) + ": " + e.what());
    }
  }
}

struct PharaohOptions {
  /// Expected number of lines; missing trailing lines are an error.
  std::optional<std::size_t> n_pairs;
  /// When set, indices are validated against the sentence lengths.
  const ParallelCorpus* corpus = nullptr;
  /// Input uses 1-based indices (converted to 0-based on read).
  bool one_based = false;
};

/// Parses line-aligned Pharaoh text: `i-j` marks a sure link, `i?j` a
/// possible-only link. Indices are 0-based unless `one_based` is set.
inline AlignmentSet parse_pharaoh(std::string_view content, const PharaohOptions& opts = {}) {
  auto lines = text::split_lines(content);
  std::optional<std::size_t> expected = opts.n_pairs;
  if (opts.corpus) {
    if (expected && *expected != opts.corpus->size())
      throw DataError("n_pairs disagrees with corpus size");
    expected = opts.corpus->size();
  }
  if (expected && lines.size() != *expected)
    throw ParseError("expected " + std::to_string(*expected) + " alignment lines, found " +
                     std::to_string(lines.size()));

  AlignmentSet out(lines.size());
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::size_t lineno = k + 1;
    for (std::string_view item : text::split_ws(lines[k])) {
      std::size_t sep = item.find_first_of("-?");
      if (sep == std::string_view::npos)
        throw ParseError("malformed alignment item '" + std::string(item) + "'", lineno);
      const bool sure = item[sep] == '-';
      auto lhs = item.substr(0, sep);
      auto rhs = item.substr(sep + 1);
      if (!lhs.empty() && lhs.front() == '-')
        throw ParseError("negative index in '" + std::string(item) + "'", lineno);
      if (!rhs.empty() && rhs.front() == '-')
        throw ParseError("negative index in '" + std::string(item) + "'", lineno);
      auto i = text::parse_index(lhs);
      auto j = text::parse_index(rhs);
      if (!i || !j || lhs.front() == '+' || rhs.front() == '+')
        throw ParseError("malformed alignment item '" + std::string(item) + "'", lineno);
      std::size_t si = *i, tj = *j;
      if (opts.one_based) {
        if (si == 0 || tj == 0)
          throw ParseError("index 0 in one-based alignment item '" + std::string(item) + "'", lineno);
        --si;
        --tj;
      }
      if (opts.corpus) {
        const auto& p = (*opts.corpus)[k];
        if (si >= p.src.size() || tj >= p.tgt.size())
          throw ParseError("alignment item '" + std::string(item) + "' out of range for " +
                               std::to_string(p.src.size()) + "x" + std::to_string(p.tgt.size()) +
                               " pair",
                           lineno);
      }
      if (sure)
        out[k].add_sure({si, tj});
      else
        out[k].add_possible({si, tj});
    }
  }
  return out;
}

/// One line per pair, links in (i, j) order; sure as `i-j`, possible-only as `i?j`.
inline std::string serialize_pharaoh_line(const SentenceAlignment& a) {
  std::string out;
  for (const Link& l : a.possible()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(l.src);
    out += a.sure().count(l) ? '-' : '?';
    out += std::to_string(l.tgt);
  }
  return out;
}

inline std::string serialize_pharaoh(const AlignmentSet& a) {
  std::string out;
  for (const auto& s : a) {
    out += serialize_pharaoh_line(s);
    out += '\n';
  }
  return out;
}

inline AlignmentSet transposed(const AlignmentSet& a) {
  AlignmentSet out;
  out.reserve(a.size());
  for (const auto& s : a) out.push_back(s.transposed());
  return out;
}

}  // namespace walign
