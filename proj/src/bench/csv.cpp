// SPDX-License-Identifier: MIT
#include "gpband/bench/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gpband::bench {
namespace {

constexpr const char* kSchema = "gpband-trace v1";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void bad_line(const std::string& path, std::size_t lineno, const std::string& why) {
  throw std::runtime_error("trace csv error at " + path + ":" + std::to_string(lineno) + ": " +
                           why);
}

// std::stod rejects subnormals (strtod flags ERANGE on them); from_chars
// round-trips every finite double the writer can emit.
double parse_double(const std::string& cell) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || end != cell.data() + cell.size())
    throw std::invalid_argument("bad number \"" + cell + "\"");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

void write_trace_csv(const std::string& path, const RunTrace& trace, std::size_t dims,
                     const std::map<std::string, std::string>& meta) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open \"" + path + "\" for writing");
  out << "# schema=" << kSchema << "\n";
  for (const auto& [k, v] : meta) out << "# " << k << "=" << v << "\n";
  out << "t,n_e";
  for (std::size_t a = 0; a < dims; ++a) out << ",x" << a;
  out << ",y,delta,cumulative_regret,simple_regret,leaf_or_active_count,wall_ns\n";
  for (const auto& row : trace.rows) {
    out << row.t << "," << row.n_e;
    for (std::size_t a = 0; a < dims; ++a) out << "," << format_double(row.x[a]);
    out << "," << format_double(row.y) << "," << format_double(row.delta) << ","
        << format_double(row.cum_regret) << "," << format_double(row.simple_regret) << ","
        << row.support << "," << row.wall_ns << "\n";
  }
  if (!out) throw std::runtime_error("write to \"" + path + "\" failed");
}

TraceFile read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open \"" + path + "\" for reading");
  TraceFile tf;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      while (!key.empty() && key.front() == ' ') key.erase(key.begin());
      tf.meta[key] = line.substr(eq + 1);
      continue;
    }
    const auto cells = split(line, ',');
    if (!header_seen) {
      if (cells.size() < 9 || cells[0] != "t" || cells[1] != "n_e")
        bad_line(path, lineno, "unexpected column header");
      tf.dims = cells.size() - 8;
      header_seen = true;
      continue;
    }
    if (cells.size() != tf.dims + 8)
      bad_line(path, lineno, "expected " + std::to_string(tf.dims + 8) + " cells, got " +
                                 std::to_string(cells.size()));
    try {
      TraceRow row;
      std::size_t c = 0;
      row.t = std::stoull(cells[c++]);
      row.n_e = std::stoull(cells[c++]);
      row.x.resize(tf.dims);
      for (std::size_t a = 0; a < tf.dims; ++a) row.x[a] = parse_double(cells[c++]);
      row.y = parse_double(cells[c++]);
      row.delta = parse_double(cells[c++]);
      row.cum_regret = parse_double(cells[c++]);
      row.simple_regret = parse_double(cells[c++]);
      row.support = std::stoull(cells[c++]);
      row.wall_ns = std::stoull(cells[c++]);
      tf.rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      bad_line(path, lineno, e.what());
    }
  }
  if (tf.meta.find("schema") == tf.meta.end() || tf.meta.at("schema") != kSchema)
    throw std::runtime_error("trace csv error at " + path + ": missing or wrong schema marker");
  if (!header_seen) throw std::runtime_error("trace csv error at " + path + ": no column header");
  return tf;
}

}  // namespace gpband::bench
