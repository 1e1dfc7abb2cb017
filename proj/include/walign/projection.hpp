#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "walign/alignment.hpp"
#include "walign/conll.hpp"
#include "walign/corpus.hpp"
#include "walign/error.hpp"

namespace walign::projection {

/// tag -> number of aligned source tokens carrying it
using Votes = std::map<std::string, std::size_t>;
using SentenceVotes = std::vector<Votes>;

struct ProjectionConfig {
  TagTask task = TagTask::POS;
  double type_threshold = 0.3;  // beta
  double min_coverage = 0.8;    // rho
  std::optional<std::string> fallback_tag;  // NOUN for POS, O for NER
  /// Tie-break order, best first. Empty means descending source frequency,
  /// then lexicographic.
  std::vector<std::string> tag_priority;

  std::string fallback() const {
    if (fallback_tag) return *fallback_tag;
    return task == TagTask::POS ? "NOUN" : "O";
  }
};

/// Total order over tags used to break count ties.
class TagRanking {
 public:
  TagRanking() = default;
  explicit TagRanking(const std::vector<std::string>& best_first) {
    for (std::size_t k = 0; k < best_first.size(); ++k) rank_.emplace(best_first[k], k);
  }

  /// Descending frequency in `source`, ties lexicographic.
  static TagRanking by_frequency(const TaggedCorpus& source) {
    std::map<std::string, std::size_t> freq;
    for (const auto& t : source.tagset) freq[t];
    for (const auto& s : source.sentences)
      for (const auto& t : s.tags) ++freq[t];
    std::vector<std::pair<std::string, std::size_t>> items(freq.begin(), freq.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> order;
    for (auto& [t, c] : items) order.push_back(t);
    return TagRanking(order);
  }

  /// True when a ranks ahead of b. Unranked tags come last, lexicographically.
  bool before(const std::string& a, const std::string& b) const {
    auto ia = rank_.find(a), ib = rank_.find(b);
    const bool ra = ia != rank_.end(), rb = ib != rank_.end();
    if (ra && rb) return ia->second < ib->second;
    if (ra != rb) return ra;
    return a < b;
  }

 private:
  std::map<std::string, std::size_t> rank_;
};

/// Highest count; ties go to the better-ranked tag. Votes must be non-empty.
inline std::string winner(const Votes& votes, const TagRanking& ranking) {
  const std::pair<const std::string, std::size_t>* best = nullptr;
  for (const auto& kv : votes) {
    if (kv.second == 0) continue;
    if (!best || kv.second > best->second || (kv.second == best->second && ranking.before(kv.first, best->first)))
      best = &kv;
  }
  if (!best) throw DataError("winner of an empty vote");
  return best->first;
}

inline bool has_votes(const Votes& v) {
  for (const auto& kv : v)
    if (kv.second) return true;
  return false;
}

/// Each target token collects the tags of every source token linked to it.
inline std::vector<SentenceVotes> token_project(const TaggedCorpus& source, const AlignmentSet& alignment,
                                                const std::vector<Sentence>& targets) {
  if (source.sentences.size() != alignment.size() || alignment.size() != targets.size())
    throw DataError("source tags, alignment and target corpus differ in line count (" +
                    std::to_string(source.sentences.size()) + ", " + std::to_string(alignment.size()) + ", " +
                    std::to_string(targets.size()) + ")");
  std::vector<SentenceVotes> out(targets.size());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const auto& src = source.sentences[k];
    out[k].resize(targets[k].size());
    alignment[k].check_bounds(src.tokens.size(), targets[k].size());
    for (const Link& l : alignment[k].sure()) ++out[k][l.tgt][src.tags[l.src]];
  }
  return out;
}

struct TypeEntry {
  std::map<std::string, std::size_t> allowed;  // tag -> count, count >= beta * max
  std::string top;                             // best allowed tag
};

/// target word type -> allowed tags
using TypeDictionary = std::map<std::string, TypeEntry>;

/// Tallies each token's winning vote per word type and keeps the tags whose
/// tally reaches `beta` times the type's largest tally.
inline TypeDictionary build_type_dictionary(const std::vector<SentenceVotes>& votes,
                                            const std::vector<Sentence>& targets, double beta,
                                            const TagRanking& ranking) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw DataError("type threshold must lie in [0, 1]");
  std::map<std::string, Votes> tallies;
  for (std::size_t k = 0; k < votes.size(); ++k)
    for (std::size_t j = 0; j < votes[k].size(); ++j)
      if (has_votes(votes[k][j])) ++tallies[targets[k][j]][winner(votes[k][j], ranking)];

  TypeDictionary dict;
  for (auto& [word, tally] : tallies) {
    std::size_t mx = 0;
    for (auto& [t, c] : tally) mx = std::max(mx, c);
    TypeEntry entry;
    for (auto& [t, c] : tally)
      if (static_cast<double>(c) >= beta * static_cast<double>(mx)) entry.allowed.emplace(t, c);
    entry.top = winner(entry.allowed, ranking);
    dict.emplace(word, std::move(entry));
  }
  return dict;
}

/// Tag for one target token given its votes and the type dictionary.
inline std::string choose_tag(const Votes& votes, const std::string& word, const TypeDictionary& dict,
                              const TagRanking& ranking, const std::string& fallback) {
  if (!has_votes(votes)) return fallback;
  auto it = dict.find(word);
  if (it == dict.end()) return winner(votes, ranking);
  Votes permitted;
  for (const auto& [t, c] : votes)
    if (c && it->second.allowed.count(t)) permitted.emplace(t, c);
  if (permitted.empty()) return it->second.top;
  return winner(permitted, ranking);
}

struct ProjectionStats {
  std::size_t sentences_kept = 0;
  std::size_t sentences_dropped = 0;
  std::size_t tokens = 0;          // all target tokens
  std::size_t aligned_tokens = 0;  // target tokens with at least one vote

  double token_coverage() const {
    return tokens ? static_cast<double>(aligned_tokens) / static_cast<double>(tokens) : 0.0;
  }
};

struct ProjectionResult {
  TaggedCorpus corpus;
  std::vector<std::size_t> kept;  // indices of emitted sentences
  ProjectionStats stats;
};

/// Projects source tags onto the target side with token votes filtered by a
/// corpus-wide type dictionary, drops low-coverage sentences and repairs BIO
/// for NER.
inline ProjectionResult project(const TaggedCorpus& source, const AlignmentSet& alignment,
                                const std::vector<Sentence>& targets, const ProjectionConfig& config) {
  if (!(config.min_coverage >= 0.0 && config.min_coverage <= 1.0))
    throw DataError("min coverage must lie in [0, 1]");
  const std::string fallback = config.fallback();
  if (!source.tagset.count(fallback)) throw DataError("fallback tag '" + fallback + "' is not in the tagset");
  const TagRanking ranking =
      config.tag_priority.empty() ? TagRanking::by_frequency(source) : TagRanking(config.tag_priority);

  const auto votes = token_project(source, alignment, targets);
  const auto dict = build_type_dictionary(votes, targets, config.type_threshold, ranking);

  ProjectionResult res;
  res.corpus.task = config.task;
  res.corpus.tagset = source.tagset;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const auto& tgt = targets[k];
    std::size_t aligned = 0;
    for (const auto& v : votes[k]) aligned += has_votes(v) ? 1 : 0;
    res.stats.tokens += tgt.size();
    res.stats.aligned_tokens += aligned;
    const double coverage = tgt.empty() ? 0.0 : static_cast<double>(aligned) / static_cast<double>(tgt.size());
    if (coverage < config.min_coverage) {
      ++res.stats.sentences_dropped;
      continue;
    }
    TaggedSentence s;
    s.tokens = tgt;
    for (std::size_t j = 0; j < tgt.size(); ++j)
      s.tags.push_back(choose_tag(votes[k][j], tgt[j], dict, ranking, fallback));
    if (config.task == TagTask::NER) bio::repair(s.tags);
    res.corpus.sentences.push_back(std::move(s));
    res.kept.push_back(k);
    ++res.stats.sentences_kept;
  }
  return res;
}

}  // namespace walign::projection
