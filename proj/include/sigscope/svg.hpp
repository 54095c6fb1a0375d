#ifndef SIGSCOPE_SVG_HPP
#define SIGSCOPE_SVG_HPP

#include <map>
#include <string>

#include "sigscope/classify.hpp"

namespace sigscope {

/// Renders the embedding as a standalone SVG scatter plot: per-cluster
/// fitted curves, dashed band boundaries, confidence ellipses, and one
/// marker plus label for every non-Inlier verdict. Byte output is
/// deterministic for fixed input.
std::string render_svg(const Embedding& embedding,
                       const std::map<int, ConfidenceBand<double>>& bands,
                       const std::map<int, ConfidenceEllipse<double>>& ellipses,
                       const OutlierReport& report);

} // namespace sigscope

#endif
