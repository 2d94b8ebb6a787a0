#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace scatseq::cli {

enum ExitCode : int {
  kOk = 0,        // property holds or computation done
  kRefuted = 1,   // property refuted; witness emitted
  kUsage = 2,     // usage, encoding or budget error
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, used to key the results cache.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace scatseq::cli
