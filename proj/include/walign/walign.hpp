#pragma once

#include "walign/alignment.hpp"
#include "walign/analysis.hpp"
#include "walign/conll.hpp"
#include "walign/corpus.hpp"
#include "walign/embed_align.hpp"
#include "walign/embeddings.hpp"
#include "walign/error.hpp"
#include "walign/ibm.hpp"
#include "walign/metrics.hpp"
#include "walign/pipeline.hpp"
#include "walign/projection.hpp"
#include "walign/symmetrize.hpp"

namespace walign {
inline constexpr const char* kVersion = "0.1.0";
}
