#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "walign/error.hpp"
#include "walign/text.hpp"

namespace walign {

enum class TagTask { POS, NER };

struct TaggedSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;

  friend bool operator==(const TaggedSentence&, const TaggedSentence&) = default;
};

struct TaggedCorpus {
  std::vector<TaggedSentence> sentences;
  std::set<std::string> tagset;
  TagTask task = TagTask::POS;
};

namespace bio {

inline bool is_outside(std::string_view tag) { return tag == "O"; }
inline bool is_begin(std::string_view tag) { return tag.size() > 2 && tag.substr(0, 2) == "B-"; }
inline bool is_inside(std::string_view tag) { return tag.size() > 2 && tag.substr(0, 2) == "I-"; }
inline std::string_view entity(std::string_view tag) { return tag.substr(2); }

/// Index of the first tag that breaks BIO well-formedness, if any.
inline std::optional<std::size_t> first_violation(const std::vector<std::string>& tags) {
  for (std::size_t k = 0; k < tags.size(); ++k) {
    const auto& t = tags[k];
    if (is_outside(t) || is_begin(t)) continue;
    if (!is_inside(t)) return k;
    if (k == 0) return k;
    const auto& prev = tags[k - 1];
    if (!(is_begin(prev) || is_inside(prev)) || entity(prev) != entity(t)) return k;
  }
  return std::nullopt;
}

inline bool valid(const std::vector<std::string>& tags) { return !first_violation(tags); }

/// Rewrites every orphan I-X (not continuing an X span) as B-X.
inline void repair(std::vector<std::string>& tags) {
  for (std::size_t k = 0; k < tags.size(); ++k) {
    if (!is_inside(tags[k])) continue;
    bool continues = k > 0 && (is_begin(tags[k - 1]) || is_inside(tags[k - 1])) &&
                     entity(tags[k - 1]) == entity(tags[k]);
    if (!continues) tags[k] = "B-" + std::string(entity(tags[k]));
  }
}

}  // namespace bio

struct ConllOptions {
  TagTask task = TagTask::POS;
  /// Closed tagset; when absent the observed tags become the tagset.
  std::optional<std::set<std::string>> tagset;
  /// For NER, reject sequences that are not BIO-valid.
  bool strict_bio = true;
};

/// Parses `token<TAB>tag` lines with blank lines between sentences.
inline TaggedCorpus parse_conll(std::string_view content, const ConllOptions& opts = {}) {
  TaggedCorpus tc;
  tc.task = opts.task;
  TaggedSentence cur;
  std::size_t cur_start = 0;

  auto flush = [&] {
    if (cur.tokens.empty()) return;
    if (opts.task == TagTask::NER && opts.strict_bio) {
      if (auto bad = bio::first_violation(cur.tags))
        throw ParseError("BIO violation at tag '" + cur.tags[*bad] + "'", cur_start + *bad);
    }
    tc.sentences.push_back(std::move(cur));
    cur = {};
  };

  auto lines = text::split_lines(content);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::size_t lineno = k + 1;
    std::string_view line = lines[k];
    if (line.empty()) {
      flush();
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos)
      throw ParseError("expected exactly one TAB between token and tag", lineno);
    std::string_view tok = line.substr(0, tab);
    std::string_view tag = line.substr(tab + 1);
    if (tok.empty() || tag.empty()) throw ParseError("empty token or tag", lineno);
    for (char c : line)
      if (c != '\t' && text::is_space(c)) throw ParseError("whitespace inside token or tag", lineno);
    if (opts.tagset && !opts.tagset->count(std::string(tag)))
      throw ParseError("tag '" + std::string(tag) + "' not in tagset", lineno);
    if (cur.tokens.empty()) cur_start = lineno;
    cur.tokens.emplace_back(tok);
    cur.tags.emplace_back(tag);
    tc.tagset.emplace(tag);
  }
  flush();
  if (opts.tagset) tc.tagset = *opts.tagset;
  return tc;
}

inline std::string serialize_conll(const TaggedCorpus& tc) {
  std::string out;
  for (const auto& s : tc.sentences) {
    for (std::size_t k = 0; k < s.tokens.size(); ++k) {
      out += s.tokens[k];
      out += '\t';
      out += s.tags[k];
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

}  // namespace walign
