#ifndef SIGSCOPE_SERIES_HPP
#define SIGSCOPE_SERIES_HPP

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <vector>

#include "sigscope/errors.hpp"

namespace sigscope {

/// One labeled period of samples_per_period observations.
struct Period {
  std::string label;
  Eigen::VectorXd samples;
};

/// Ordered, rectangular collection of periods with unique labels.
struct SeriesMatrix {
  std::vector<Period> periods;
  Eigen::Index samples_per_period = 0;

  Eigen::Index size() const { return static_cast<Eigen::Index>(periods.size()); }
};

/// Range filter. A period is rejected once more than max_violations of its
/// samples fall outside [min_value, max_value].
struct FilterSpec {
  double min_value = 0.0;
  double max_value = std::numeric_limits<double>::infinity();
  int max_violations = 0;
};

struct FilterResult {
  SeriesMatrix retained;
  std::vector<std::string> rejected;
};

/// Parses `label,v1,...,vm` rows. An optional header row is detected by a
/// non-numeric second cell. samples_per_period 0 adopts the first row's
/// width; otherwise every row must have exactly that many samples.
SeriesMatrix parse_series_csv(const std::string& path, Eigen::Index samples_per_period = 0);

void write_series_csv(const std::string& path, const SeriesMatrix& matrix);

int count_violations(const Period& period, const FilterSpec& spec);

/// Splits the matrix into periods passing the filter and rejected labels,
/// both in input order.
FilterResult filter_periods(const SeriesMatrix& matrix, const FilterSpec& spec);

/// Joint filter over a parallel channel with identical labels: a period is
/// retained only when it passes both specs. The retained matrix carries the
/// primary channel's samples.
FilterResult filter_periods(const SeriesMatrix& primary, const SeriesMatrix& secondary,
                            const FilterSpec& primary_spec, const FilterSpec& secondary_spec);

} // namespace sigscope

#endif
