#pragma once

#include "walign/alignment.hpp"
#include "walign/analysis.hpp"
#include "walign/corpus.hpp"
#include "walign/ibm.hpp"
#include "walign/symmetrize.hpp"

namespace walign {

/// Trains forward and reverse models on `train` followed by `eval`, decodes
/// `eval` in both directions and symmetrizes. The evaluation pairs join the
/// training data, as is usual for unsupervised aligners.
inline AlignmentSet align_bidirectional(const ParallelCorpus& train, const ParallelCorpus& eval,
                                        const ibm::TrainConfig& config, Heuristic heuristic) {
  ParallelCorpus all = train;
  all.append(eval);
  const auto fwd = ibm::train(all, ibm::Direction::Forward, config).model();
  const auto rev = ibm::train(all, ibm::Direction::Reverse, config).model();
  return symmetrize(ibm::decode(eval, fwd, ibm::Direction::Forward, config.workers),
                    ibm::decode(eval, rev, ibm::Direction::Reverse, config.workers), heuristic, eval);
}

inline analysis::Method statistical_method(std::string name, const ParallelCorpus& eval, ibm::TrainConfig config,
                                           Heuristic heuristic) {
  return {std::move(name), [&eval, config, heuristic](const ParallelCorpus& train) {
            return align_bidirectional(train, eval, config, heuristic);
          }};
}

}  // namespace walign
