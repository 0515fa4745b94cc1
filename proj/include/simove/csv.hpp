#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "simove/harness.hpp"

namespace simove {

struct Trace {
  std::vector<ExtractFlavor> flavors;
  std::vector<TraceRow> rows;
};

std::vector<std::string> trace_header(const std::vector<ExtractFlavor>& flavors);

// Comma-separated with a header row; fields containing commas or quotes are
// quoted. Numbers use 17 significant digits so they parse back exactly.
void write_trace_csv(std::ostream& out, const std::vector<ExtractFlavor>& flavors, const std::vector<TraceRow>& rows);
void write_trace_csv(const std::string& path, const std::vector<ExtractFlavor>& flavors,
                     const std::vector<TraceRow>& rows);

// Throws std::invalid_argument on a malformed file.
Trace read_trace_csv(std::istream& in);
Trace read_trace_csv(const std::string& path);

// Splits one CSV record (no trailing newline).
std::vector<std::string> split_csv_record(const std::string& line);

}  // namespace simove
