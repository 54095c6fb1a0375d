#ifndef SIGSCOPE_TESTS_HELPERS_HPP
#define SIGSCOPE_TESTS_HELPERS_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace testutil {

/// Runs fn, requires it to throw Error, and returns the message for
/// substring checks.
template <typename Error, typename Fn>
std::string thrown_message(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  } catch (const std::exception& e) {
    FAIL("wrong exception type: " << e.what());
    return {};
  }
  FAIL("expected exception was not thrown");
  return {};
}

inline std::string data_path(const std::string& name) {
  return (std::filesystem::path(SIGSCOPE_TEST_DATA_DIR) / name).string();
}

/// Per-test scratch files live under the build tree.
inline std::string scratch_path(const std::string& name) {
  const auto dir = std::filesystem::path("test_scratch");
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

} // namespace testutil

#endif
