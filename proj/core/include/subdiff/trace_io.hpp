#pragma once

#include <string>
#include <vector>

#include "subdiff/types.hpp"

namespace subdiff {

/// Generic numeric CSV: `#`-prefixed key=value metadata lines, one header
/// line, then decimal rows.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows; // row-major
    TraceMeta meta;
};

/// Writes a table; `precision` is the significant-digit count (9 for summary
/// tables, 17 for bit-faithful trace data).
void write_table_csv(const std::string& path, const Table& table, int precision = 9);

Table read_table_csv(const std::string& path);

/// Trace CSV: header `time,value`, 17-significant-digit decimals, metadata
/// (seed, h, dt, generator, ...) as `#` comment lines.
void write_trace_csv(const std::string& path, const Trace& trace);

Trace read_trace_csv(const std::string& path);

} // namespace subdiff
