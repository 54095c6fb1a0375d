#ifndef SIGSCOPE_SIGNATURE_HPP
#define SIGSCOPE_SIGNATURE_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "sigscope/fourier.hpp"
#include "sigscope/series.hpp"

namespace sigscope {

/// Which spectrum components form a signature. Index 0 selects the offset,
/// index k > 0 the power value A_k. Order is preserved.
struct HarmonicSelection {
  std::vector<int> indices{0, 7, 14, 21, 28, 35, 42};
};

/// Parses a comma-separated index list, e.g. "0,7,14".
HarmonicSelection parse_harmonics(const std::string& text);

/// Rejects negative or duplicate indices.
void validate(const HarmonicSelection& selection);

struct Signature {
  std::string label;
  Eigen::VectorXd values;
};

Signature extract_signature(const Spectrum<double>& spectrum, const HarmonicSelection& selection,
                            const std::string& label);

/// One signature per period, in period order.
std::vector<Signature> compute_signatures(const SeriesMatrix& matrix,
                                          const HarmonicSelection& selection);

/// Per-component z-score across signatures using the sample standard
/// deviation; components with zero spread map to 0.
std::vector<Signature> standardize_signatures(const std::vector<Signature>& signatures);

void write_signatures_csv(const std::string& path, const std::vector<Signature>& signatures);
std::vector<Signature> read_signatures_csv(const std::string& path);

} // namespace sigscope

#endif
