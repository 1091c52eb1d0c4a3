#pragma once

#include <string>
#include <string_view>

namespace memsim::io {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Parses a complete numeric literal (scientific notation, inf, nan).
/// Returns false on trailing characters or an empty string.
bool parse_double(std::string_view text, double& out);

}  // namespace memsim::io
