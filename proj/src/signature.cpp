#include "sigscope/signature.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "sigscope/csv.hpp"

namespace sigscope {

HarmonicSelection parse_harmonics(const std::string& text) {
  HarmonicSelection selection;
  selection.indices.clear();
  for (const auto& cell : csv::split(text)) {
    long value = 0;
    if (!csv::parse_int(cell, value) || value < 0)
      throw ConfigError("signature: invalid harmonic index '" + cell + "'");
    selection.indices.push_back(static_cast<int>(value));
  }
  if (selection.indices.empty())
    throw ConfigError("signature: harmonic selection is empty");
  validate(selection);
  return selection;
}

void validate(const HarmonicSelection& selection) {
  if (selection.indices.empty())
    throw ConfigError("signature: harmonic selection is empty");
  std::set<int> seen;
  for (int k : selection.indices) {
    if (k < 0) throw ConfigError("signature: harmonic index must be non-negative");
    if (!seen.insert(k).second)
      throw ConfigError("signature: duplicate harmonic index " + std::to_string(k));
  }
}

Signature extract_signature(const Spectrum<double>& spectrum, const HarmonicSelection& selection,
                            const std::string& label) {
  return Signature{label, signature_values(spectrum, selection.indices)};
}

std::vector<Signature> compute_signatures(const SeriesMatrix& matrix,
                                          const HarmonicSelection& selection) {
  validate(selection);
  std::vector<Signature> signatures;
  signatures.reserve(matrix.periods.size());
  for (const auto& period : matrix.periods)
    signatures.push_back(extract_signature(dft(period.samples), selection, period.label));
  return signatures;
}

std::vector<Signature> standardize_signatures(const std::vector<Signature>& signatures) {
  const auto n = static_cast<Eigen::Index>(signatures.size());
  if (n < 2) throw DataError("signature: standardization needs at least 2 signatures");
  const Eigen::Index dim = signatures.front().values.size();
  for (const auto& s : signatures)
    if (s.values.size() != dim)
      throw DataError("signature: '" + s.label + "' has " + std::to_string(s.values.size()) +
                      " components, expected " + std::to_string(dim));

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const auto& s : signatures) mean += s.values;
  mean /= static_cast<double>(n);

  Eigen::VectorXd ss = Eigen::VectorXd::Zero(dim);
  for (const auto& s : signatures) ss += (s.values - mean).cwiseAbs2();
  const Eigen::VectorXd stddev = (ss / static_cast<double>(n - 1)).cwiseSqrt();

  std::vector<Signature> out = signatures;
  for (auto& s : out)
    for (Eigen::Index j = 0; j < dim; ++j)
      s.values(j) = stddev(j) > 0.0 ? (s.values(j) - mean(j)) / stddev(j) : 0.0;
  return out;
}

void write_signatures_csv(const std::string& path, const std::vector<Signature>& signatures) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("signature: cannot write '" + path + "'");
  for (const auto& s : signatures) {
    out << s.label;
    for (Eigen::Index j = 0; j < s.values.size(); ++j)
      out << ',' << csv::format_double(s.values(j));
    out << '\n';
  }
  if (!out) throw DataError("signature: failed writing '" + path + "'");
}

std::vector<Signature> read_signatures_csv(const std::string& path) {
  const auto rows = csv::load(path, "signature");
  std::vector<Signature> signatures;
  std::set<std::string> seen;
  Eigen::Index dim = 0;

  std::size_t begin = 0;
  if (!rows.empty() && csv::looks_like_header(rows[0])) begin = 1;
  for (std::size_t r = begin; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string line = std::to_string(row.line_no);
    if (row.cells.size() < 2)
      throw DataError("signature: row " + line + " has a label but no values");
    Signature s;
    s.label = row.cells[0];
    if (s.label.empty()) throw DataError("signature: row " + line + " has an empty label");
    if (!seen.insert(s.label).second)
      throw DataError("signature: duplicate label '" + s.label + "' at row " + line);
    const auto values = static_cast<Eigen::Index>(row.cells.size()) - 1;
    if (dim == 0) dim = values;
    if (values != dim)
      throw DataError("signature: row " + line + " has " + std::to_string(values) +
                      " values, expected " + std::to_string(dim));
    s.values.resize(values);
    for (Eigen::Index j = 0; j < values; ++j) {
      double value = 0.0;
      if (!csv::parse_double(row.cells[static_cast<std::size_t>(j) + 1], value))
        throw DataError("signature: row " + line + ", column " + std::to_string(j + 2) +
                        ": cannot parse '" + row.cells[static_cast<std::size_t>(j) + 1] +
                        "' as a finite number");
      s.values(j) = value;
    }
    signatures.push_back(std::move(s));
  }
  if (signatures.empty()) throw DataError("signature: no data rows in '" + path + "'");
  return signatures;
}

} // namespace sigscope
