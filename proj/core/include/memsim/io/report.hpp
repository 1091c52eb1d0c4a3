#pragma once

#include <filesystem>
#include <string>

#include "memsim/fitting.hpp"

namespace memsim::io {

/// "key = value" lines mirroring FitReport fields; history is comma-separated.
std::string format_fit_report(const fitting::FitReport& report);
void write_fit_report(const fitting::FitReport& report, const std::filesystem::path& path);

}  // namespace memsim::io
