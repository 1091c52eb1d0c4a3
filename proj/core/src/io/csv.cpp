#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "memsim/errors.hpp"
#include "memsim/io/csv.hpp"
#include "memsim/io/format.hpp"

namespace memsim::io {

namespace {
constexpr std::string_view kHeader = "t,v,i,x,r";
}

void write_csv(const SimResult& res, std::ostream& out) {
  out << kHeader << '\n';
  for (const SimRow& row : res.rows) {
    out << format_double(row.t) << ',' << format_double(row.v) << ',' << format_double(row.i)
        << ',' << format_double(row.x) << ',' << format_double(row.r) << '\n';
  }
}

void export_csv(const SimResult& res, const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_csv(res, buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << buffer.str();
  if (!file) throw IoError("failed writing " + path.string());
}

SimResult read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw IoError("CSV must start with the header '" + std::string(kHeader) + "'");
  SimResult res;
  res.x_min = std::numeric_limits<double>::infinity();
  res.x_max = -std::numeric_limits<double>::infinity();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double values[5];
    std::size_t field = 0;
    std::string_view rest = line;
    bool more = true;
    while (more) {
      const auto comma = rest.find(',');
      more = comma != std::string_view::npos;
      const std::string_view token = rest.substr(0, comma);
      if (field == 5)
        throw IoError("CSV line " + std::to_string(line_no) + ": expected 5 fields");
      if (!parse_double(token, values[field]))
        throw IoError("CSV line " + std::to_string(line_no) + ": bad number '" +
                      std::string(token) + "'");
      ++field;
      if (more) rest.remove_prefix(comma + 1);
    }
    if (field != 5) throw IoError("CSV line " + std::to_string(line_no) + ": expected 5 fields");
    res.rows.push_back({values[0], values[1], values[2], values[3], values[4]});
    res.x_min = std::min(res.x_min, values[3]);
    res.x_max = std::max(res.x_max, values[3]);
  }
  if (res.rows.empty()) res.x_min = res.x_max = 0.0;
  return res;
}

SimResult import_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());
  return read_csv(file);
}

}  // namespace memsim::io
