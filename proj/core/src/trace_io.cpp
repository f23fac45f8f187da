#include "subdiff/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "subdiff/errors.hpp"

namespace subdiff {

namespace {

std::string format_number(double v, int precision) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

double parse_number(const std::string& field, long line) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r')) --end;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError("non-numeric cell '" + field + "'", line);
    return value;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

} // namespace

void write_table_csv(const std::string& path, const Table& table, int precision) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    for (const auto& [k, v] : table.meta) out << "# " << k << "=" << v << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << format_number(row[c], precision) << (c + 1 < row.size() ? "," : "");
        out << "\n";
    }
    if (!out) throw InputError("write failed for '" + path + "'");
}

Table read_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "' for reading");
    Table table;
    std::string line;
    long lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body.front() == ' ') body.erase(0, 1);
            const auto eq = body.find('=');
            if (eq != std::string::npos)
                table.meta[body.substr(0, eq)] = body.substr(eq + 1);
            continue;
        }
        if (!have_header) {
            // header line: must not parse as a pure numeric row
            auto fields = split_csv(line);
            bool numeric = true;
            for (const auto& f : fields) {
                try {
                    (void)parse_number(f, lineno);
                } catch (const ParseError&) {
                    numeric = false;
                    break;
                }
            }
            if (numeric) throw ParseError("missing header line", lineno);
            table.columns = fields;
            have_header = true;
            continue;
        }
        auto fields = split_csv(line);
        if (fields.size() != table.columns.size())
            throw ParseError("row has " + std::to_string(fields.size()) + " fields, expected "
                                 + std::to_string(table.columns.size()),
                             lineno);
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) row[c] = parse_number(fields[c], lineno);
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("missing header line", lineno);
    return table;
}

void write_trace_csv(const std::string& path, const Trace& trace) {
    Table table;
    table.meta = trace.meta();
    table.meta["dt"] = format_number(trace.dt(), 17);
    table.meta["start_time"] = format_number(trace.start_time(), 17);
    table.columns = {"time", "value"};
    table.rows.reserve(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i)
        table.rows.push_back({trace.time(i), trace.value(i)});
    write_table_csv(path, table, 17);
}

Trace read_trace_csv(const std::string& path) {
    Table table = read_table_csv(path);
    if (table.columns.size() != 2)
        throw InputError("trace CSV must have exactly the columns time,value");
    if (table.rows.empty()) throw InputError("trace CSV holds no samples");

    double dt = 0.0;
    double start = table.rows.front()[0];
    if (auto it = table.meta.find("dt"); it != table.meta.end()) {
        dt = parse_number(it->second, 0);
    } else if (table.rows.size() >= 2) {
        dt = table.rows[1][0] - table.rows[0][0];
    } else {
        dt = 1.0;
    }
    if (auto it = table.meta.find("start_time"); it != table.meta.end())
        start = parse_number(it->second, 0);

    std::vector<double> values(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) values[i] = table.rows[i][1];
    return Trace(dt, std::move(values), start, std::move(table.meta));
}

} // namespace subdiff
