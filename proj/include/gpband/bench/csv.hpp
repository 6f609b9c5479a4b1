// SPDX-License-Identifier: MIT
// Trace CSV emission and parsing. Schema v1: comment header with metadata,
// one row per evaluation, doubles printed with 17 significant digits so the
// text round-trips to the exact binary values.
#pragma once

#include <map>
#include <string>

#include "gpband/trace.hpp"

namespace gpband::bench {

struct TraceFile {
  std::map<std::string, std::string> meta;  // config_hash, seed, algorithm, ...
  std::size_t dims = 0;
  std::vector<TraceRow> rows;
};

std::string format_double(double v);  // %.17g

void write_trace_csv(const std::string& path, const RunTrace& trace, std::size_t dims,
                     const std::map<std::string, std::string>& meta);

/// Parses a file written by write_trace_csv; throws std::runtime_error with
/// the offending line on malformed input.
TraceFile read_trace_csv(const std::string& path);

}  // namespace gpband::bench
