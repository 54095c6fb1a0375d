#include "sigscope/series.hpp"

#include <fstream>
#include <unordered_set>

#include "sigscope/csv.hpp"

namespace sigscope {

namespace {

void check_spec(const FilterSpec& spec) {
  if (!(spec.min_value <= spec.max_value))
    throw ConfigError("ingest: filter min_value exceeds max_value");
  if (spec.max_violations < 0)
    throw ConfigError("ingest: filter max_violations must be non-negative");
}

} // namespace

SeriesMatrix parse_series_csv(const std::string& path, Eigen::Index samples_per_period) {
  if (samples_per_period < 0)
    throw ConfigError("ingest: samples_per_period must be non-negative");
  const auto rows = csv::load(path, "ingest");

  SeriesMatrix matrix;
  matrix.samples_per_period = samples_per_period;
  std::unordered_set<std::string> seen;

  std::size_t begin = 0;
  if (!rows.empty() && csv::looks_like_header(rows[0])) begin = 1;

  for (std::size_t r = begin; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string line = std::to_string(row.line_no);
    if (row.cells.size() < 2)
      throw DataError("ingest: row " + line + " has a label but no samples");

    const std::string& label = row.cells[0];
    if (label.empty())
      throw DataError("ingest: row " + line + " has an empty label");
    if (!seen.insert(label).second)
      throw DataError("ingest: duplicate period label '" + label + "' at row " + line);

    const auto values = static_cast<Eigen::Index>(row.cells.size()) - 1;
    if (matrix.samples_per_period == 0) matrix.samples_per_period = values;
    if (values != matrix.samples_per_period)
      throw DataError("ingest: row " + line + " (label '" + label + "') has " +
                      std::to_string(values) + " samples, expected " +
                      std::to_string(matrix.samples_per_period));

    Period period;
    period.label = label;
    period.samples.resize(values);
    for (Eigen::Index j = 0; j < values; ++j) {
      double value = 0.0;
      if (!csv::parse_double(row.cells[static_cast<std::size_t>(j) + 1], value))
        throw DataError("ingest: row " + line + ", column " + std::to_string(j + 2) +
                        ": cannot parse '" + row.cells[static_cast<std::size_t>(j) + 1] +
                        "' as a finite number");
      period.samples(j) = value;
    }
    matrix.periods.push_back(std::move(period));
  }

  if (matrix.periods.empty())
    throw DataError("ingest: no data rows in '" + path + "'");
  return matrix;
}

void write_series_csv(const std::string& path, const SeriesMatrix& matrix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("ingest: cannot write '" + path + "'");
  for (const auto& period : matrix.periods) {
    if (period.label.find_first_of(",\r\n") != std::string::npos)
      throw DataError("ingest: label '" + period.label + "' contains a CSV delimiter");
    out << period.label;
    for (Eigen::Index j = 0; j < period.samples.size(); ++j)
      out << ',' << csv::format_double(period.samples(j));
    out << '\n';
  }
  if (!out) throw DataError("ingest: failed writing '" + path + "'");
}

int count_violations(const Period& period, const FilterSpec& spec) {
  int violations = 0;
  for (Eigen::Index j = 0; j < period.samples.size(); ++j) {
    const double v = period.samples(j);
    if (v < spec.min_value || v > spec.max_value) ++violations;
  }
  return violations;
}

FilterResult filter_periods(const SeriesMatrix& matrix, const FilterSpec& spec) {
  check_spec(spec);
  FilterResult result;
  result.retained.samples_per_period = matrix.samples_per_period;
  for (const auto& period : matrix.periods) {
    if (count_violations(period, spec) <= spec.max_violations)
      result.retained.periods.push_back(period);
    else
      result.rejected.push_back(period.label);
  }
  return result;
}

FilterResult filter_periods(const SeriesMatrix& primary, const SeriesMatrix& secondary,
                            const FilterSpec& primary_spec, const FilterSpec& secondary_spec) {
  check_spec(primary_spec);
  check_spec(secondary_spec);
  if (primary.size() != secondary.size())
    throw DataError("ingest: channel period counts differ: " + std::to_string(primary.size()) +
                    " vs " + std::to_string(secondary.size()));
  for (Eigen::Index i = 0; i < primary.size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (primary.periods[idx].label != secondary.periods[idx].label)
      throw DataError("ingest: channel labels differ at row " + std::to_string(i + 1) + ": '" +
                      primary.periods[idx].label + "' vs '" + secondary.periods[idx].label + "'");
  }

  FilterResult result;
  result.retained.samples_per_period = primary.samples_per_period;
  for (std::size_t i = 0; i < primary.periods.size(); ++i) {
    const bool keep =
        count_violations(primary.periods[i], primary_spec) <= primary_spec.max_violations &&
        count_violations(secondary.periods[i], secondary_spec) <= secondary_spec.max_violations;
    if (keep)
      result.retained.periods.push_back(primary.periods[i]);
    else
      result.rejected.push_back(primary.periods[i].label);
  }
  return result;
}

} // namespace sigscope
