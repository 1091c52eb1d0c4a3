#pragma once

#include <filesystem>
#include <iosfwd>

#include "memsim/core.hpp"

namespace memsim::io {

// Header "t,v,i,x,r", one row per grid point, LF line endings, no quoting.
void write_csv(const SimResult& res, std::ostream& out);
void export_csv(const SimResult& res, const std::filesystem::path& path);

/// Reads a file written by export_csv. The state bounds of the returned
/// result are the minimum and maximum x found in the file.
SimResult read_csv(std::istream& in);
SimResult import_csv(const std::filesystem::path& path);

}  // namespace memsim::io
