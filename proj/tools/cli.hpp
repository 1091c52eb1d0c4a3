#pragma once

#include <iosfwd>

namespace memsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// memsim {simulate|fit|compare|list-models} --config PATH [--out-dir PATH]
///
/// Every output is rendered in memory first and written only after the whole
/// command succeeded, so a failing run leaves no partial files behind.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace memsim::cli
