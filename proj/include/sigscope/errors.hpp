#ifndef SIGSCOPE_ERRORS_HPP
#define SIGSCOPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sigscope {

// Error taxonomy, mirrored by the CLI exit codes: ConfigError -> 2,
// DataError -> 3, NumericalError -> 4.

/// Invalid configuration: bad parameter values, missing required options,
/// unresolvable paths.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid or inconsistent data: parse failures, shape mismatches,
/// insufficient points.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical degeneracy: singular systems, non-embeddable inputs.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sigscope

#endif
