#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "walign/alignment.hpp"
#include "walign/corpus.hpp"
#include "walign/error.hpp"

namespace walign {

enum class Heuristic { Forward, Reverse, Union, Intersection, GrowDiag, GrowDiagFinal };

inline constexpr std::array kAllHeuristics = {Heuristic::Forward,      Heuristic::Reverse,
                                              Heuristic::Union,        Heuristic::Intersection,
                                              Heuristic::GrowDiag,     Heuristic::GrowDiagFinal};

inline const char* to_string(Heuristic h) {
  switch (h) {
    case Heuristic::Forward: return "forward";
    case Heuristic::Reverse: return "reverse";
    case Heuristic::Union: return "union";
    case Heuristic::Intersection: return "intersection";
    case Heuristic::GrowDiag: return "grow-diag";
    case Heuristic::GrowDiagFinal: return "grow-diag-final";
  }
  return "?";
}

inline Heuristic parse_heuristic(std::string_view s) {
  for (Heuristic h : kAllHeuristics)
    if (s == to_string(h)) return h;
  throw DataError("unknown heuristic '" + std::string(s) + "'");
}

namespace detail {

// Dense n x m link grid with per-row and per-column link counts.
class LinkGrid {
 public:
  LinkGrid(std::size_t n, std::size_t m) : n_(n), m_(m), cells_(n * m, 0), row_(n, 0), col_(m, 0) {}

  bool has(std::size_t i, std::size_t j) const { return cells_[i * m_ + j] != 0; }
  bool row_linked(std::size_t i) const { return row_[i] != 0; }
  bool col_linked(std::size_t j) const { return col_[j] != 0; }

  bool add(std::size_t i, std::size_t j) {
    if (has(i, j)) return false;
    cells_[i * m_ + j] = 1;
    ++row_[i];
    ++col_[j];
    return true;
  }

  LinkSet links() const {
    LinkSet out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < m_; ++j)
        if (has(i, j)) out.insert({i, j});
    return out;
  }

 private:
  std::size_t n_, m_;
  std::vector<char> cells_;
  std::vector<std::size_t> row_, col_;
};

inline constexpr std::array<std::pair<int, int>, 8> kNeighbors = {{
    {-1, 0}, {0, -1}, {1, 0}, {0, 1}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1},
}};

}  // namespace detail

/// Combines directional alignments of one n x m pair. Both inputs are in
/// (source, target) orientation.
///
/// Grow: start from the intersection; sweep the grid in row-major order and,
/// for every link present at the time it is visited, try its neighbours in
/// the fixed order above; a neighbour from the union is added when its row or
/// its column has no link yet. Sweeps repeat until one adds nothing. Final:
/// links of fwd, then of rev, in row-major order, are added when their row or
/// column is still unlinked.
inline LinkSet symmetrize(const LinkSet& fwd, const LinkSet& rev, Heuristic h, std::size_t n, std::size_t m) {
  for (const LinkSet* s : {&fwd, &rev})
    for (const Link& l : *s)
      if (l.src >= n || l.tgt >= m)
        throw DataError("link " + std::to_string(l.src) + "-" + std::to_string(l.tgt) + " outside " +
                        std::to_string(n) + "x" + std::to_string(m) + " sentence pair");

  LinkSet uni = fwd, inter;
  uni.insert(rev.begin(), rev.end());
  for (const Link& l : fwd)
    if (rev.count(l)) inter.insert(l);

  switch (h) {
    case Heuristic::Forward: return fwd;
    case Heuristic::Reverse: return rev;
    case Heuristic::Union: return uni;
    case Heuristic::Intersection: return inter;
    case Heuristic::GrowDiag:
    case Heuristic::GrowDiagFinal: break;
  }

  detail::LinkGrid in_union(n, m), grid(n, m);
  for (const Link& l : uni) in_union.add(l.src, l.tgt);
  for (const Link& l : inter) grid.add(l.src, l.tgt);

  bool added = true;
  while (added) {
    added = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!grid.has(i, j)) continue;
        for (auto [di, dj] : detail::kNeighbors) {
          const auto ni = static_cast<std::ptrdiff_t>(i) + di;
          const auto nj = static_cast<std::ptrdiff_t>(j) + dj;
          if (ni < 0 || nj < 0 || ni >= static_cast<std::ptrdiff_t>(n) || nj >= static_cast<std::ptrdiff_t>(m))
            continue;
          const auto ui = static_cast<std::size_t>(ni), uj = static_cast<std::size_t>(nj);
          if (grid.has(ui, uj) || !in_union.has(ui, uj)) continue;
          if (!grid.row_linked(ui) || !grid.col_linked(uj)) added |= grid.add(ui, uj);
        }
      }
    }
  }

  if (h == Heuristic::GrowDiagFinal) {
    for (const LinkSet* s : {&fwd, &rev})
      for (const Link& l : *s)
        if (!grid.has(l.src, l.tgt) && (!grid.row_linked(l.src) || !grid.col_linked(l.tgt)))
          grid.add(l.src, l.tgt);
  }
  return grid.links();
}

/// Corpus-level symmetrization; sentence sizes come from `corpus`.
inline AlignmentSet symmetrize(const AlignmentSet& fwd, const AlignmentSet& rev, Heuristic h,
                               const ParallelCorpus& corpus) {
  if (fwd.size() != corpus.size() || rev.size() != corpus.size())
    throw DataError("forward/reverse alignments and corpus differ in pair count");
  AlignmentSet out(corpus.size());
  for (std::size_t k = 0; k < corpus.size(); ++k)
    out[k] = SentenceAlignment::sure_only(
        symmetrize(fwd[k].sure(), rev[k].sure(), h, corpus[k].src.size(), corpus[k].tgt.size()));
  return out;
}

/// Corpus-level symmetrization without a corpus: each pair's grid is the
/// smallest one containing both link sets.
inline AlignmentSet symmetrize(const AlignmentSet& fwd, const AlignmentSet& rev, Heuristic h) {
  if (fwd.size() != rev.size()) throw DataError("forward and reverse alignments differ in pair count");
  AlignmentSet out(fwd.size());
  for (std::size_t k = 0; k < fwd.size(); ++k) {
    std::size_t n = 0, m = 0;
    for (const LinkSet* s : {&fwd[k].sure(), &rev[k].sure()})
      for (const Link& l : *s) {
        n = std::max(n, l.src + 1);
        m = std::max(m, l.tgt + 1);
      }
    out[k] = SentenceAlignment::sure_only(symmetrize(fwd[k].sure(), rev[k].sure(), h, n, m));
  }
  return out;
}

}  // namespace walign
