#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "walign/error.hpp"
#include "walign/text.hpp"

namespace walign {

struct Subword {
  std::size_t word_index = 0;
  std::string text;
  std::vector<double> vec;
};

/// Per-subword hidden states of one sentence pair, exported from an encoder layer.
struct EmbeddedSentencePair {
  std::size_t id = 0;
  int layer = 0;
  std::size_t dim = 0;
  std::size_t n_src_words = 0;
  std::size_t n_tgt_words = 0;
  std::vector<Subword> src_sub;
  std::vector<Subword> tgt_sub;
};

inline constexpr int kEmbeddingDigits = 9;

namespace detail {

// word_index must start at 0, never decrease, step by at most one, and end at n-1.
inline void check_word_map(const std::vector<Subword>& subs, std::size_t n_words, std::size_t record,
                           const char* side) {
  auto fail = [&](const std::string& msg) {
    throw ParseError("pair record " + std::to_string(record) + " " + side + ": " + msg);
  };
  if (subs.empty()) fail("no subwords");
  std::size_t expect = 0;  // next unseen word
  for (const auto& s : subs) {
    if (s.word_index > expect) fail("word_index gap at " + std::to_string(expect));
    if (s.word_index + 1 < expect) fail("word_index decreases at subword '" + s.text + "'");
    if (s.word_index == expect) ++expect;
  }
  if (expect != n_words)
    fail("subwords cover " + std::to_string(expect) + " words, header says " + std::to_string(n_words));
}

}  // namespace detail

/// Parses an EMB1 text file:
///   EMB1 <layer> <dim>
///   #pair <id> <n_src_words> <n_tgt_words>
///   S <word_index> <subword> <v1> ... <vd>
///   T <word_index> <subword> <v1> ... <vd>
/// Source lines precede target lines within a pair; ids strictly increase.
inline std::vector<EmbeddedSentencePair> parse_embeddings(std::string_view content) {
  auto lines = text::split_lines(content);
  if (lines.empty()) throw ParseError("empty embeddings file");
  auto head = text::split_ws(lines[0]);
  if (head.size() != 3 || head[0] != "EMB1") throw ParseError("expected 'EMB1 <layer> <dim>' header", 1);
  auto layer = text::parse_int(head[1]);
  auto dim = text::parse_index(head[2]);
  if (!layer || !dim || *dim == 0) throw ParseError("bad layer or dimension in header", 1);

  std::vector<EmbeddedSentencePair> out;
  auto finish = [&](std::size_t lineno) {
    if (out.empty()) return;
    auto& p = out.back();
    try {
      detail::check_word_map(p.src_sub, p.n_src_words, p.id, "source");
      detail::check_word_map(p.tgt_sub, p.n_tgt_words, p.id, "target");
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
  };

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::size_t lineno = k + 1;
    auto f = text::split_ws(lines[k]);
    if (f.empty()) throw ParseError("blank line", lineno);
    if (f[0] == "#pair") {
      finish(lineno - 1);
      if (f.size() != 4) throw ParseError("expected '#pair <id> <n_src> <n_tgt>'", lineno);
      auto id = text::parse_index(f[1]);
      auto ns = text::parse_index(f[2]);
      auto nt = text::parse_index(f[3]);
      if (!id || !ns || !nt || *ns == 0 || *nt == 0) throw ParseError("bad #pair record", lineno);
      if (!out.empty() && *id <= out.back().id) throw ParseError("pair ids must strictly increase", lineno);
      EmbeddedSentencePair p;
      p.id = *id;
      p.layer = static_cast<int>(*layer);
      p.dim = *dim;
      p.n_src_words = *ns;
      p.n_tgt_words = *nt;
      out.push_back(std::move(p));
      continue;
    }
    if (f[0] != "S" && f[0] != "T") throw ParseError("unknown record '" + std::string(f[0]) + "'", lineno);
    if (out.empty()) throw ParseError("subword record before any #pair", lineno);
    if (f.size() != 3 + *dim)
      throw ParseError("vector has " + std::to_string(f.size() >= 3 ? f.size() - 3 : 0) +
                           " components, expected " + std::to_string(*dim),
                       lineno);
    auto wi = text::parse_index(f[1]);
    if (!wi) throw ParseError("bad word_index", lineno);
    Subword sw{*wi, std::string(f[2]), {}};
    sw.vec.reserve(*dim);
    for (std::size_t c = 0; c < *dim; ++c) {
      auto v = text::parse_real(f[3 + c]);
      if (!v) throw ParseError("bad vector component '" + std::string(f[3 + c]) + "'", lineno);
      if (!std::isfinite(*v)) throw ParseError("non-finite vector component", lineno);
      sw.vec.push_back(*v);
    }
    auto& p = out.back();
    if (f[0] == "S") {
      if (!p.tgt_sub.empty()) throw ParseError("source subword after target subwords", lineno);
      p.src_sub.push_back(std::move(sw));
    } else {
      p.tgt_sub.push_back(std::move(sw));
    }
  }
  finish(lines.size());
  return out;
}

inline std::string serialize_embeddings(const std::vector<EmbeddedSentencePair>& pairs, int layer,
                                        std::size_t dim) {
  std::string out = "EMB1 " + std::to_string(layer) + " " + std::to_string(dim) + "\n";
  auto emit = [&](char side, const Subword& s) {
    out += side;
    out += ' ';
    out += std::to_string(s.word_index);
    out += ' ';
    out += s.text;
    for (double v : s.vec) {
      out += ' ';
      out += text::format_real(v, kEmbeddingDigits);
    }
    out += '\n';
  };
  for (const auto& p : pairs) {
    out += "#pair " + std::to_string(p.id) + " " + std::to_string(p.n_src_words) + " " +
           std::to_string(p.n_tgt_words) + "\n";
    for (const auto& s : p.src_sub) emit('S', s);
    for (const auto& s : p.tgt_sub) emit('T', s);
  }
  return out;
}

}  // namespace walign
