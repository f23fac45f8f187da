#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "subdiff/rng.hpp"
#include "subdiff/trace_io.hpp"

using namespace subdiff;

namespace {

std::filesystem::path tmp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_SUITE("trace_io") {

TEST_CASE("trace round trip is bit exact") {
    Rng rng(1);
    std::vector<double> values(1000);
    for (auto& v : values) v = 1e-7 * rng.normal() + rng.normal();
    const Trace original(0.0125, std::move(values), -3.5,
                         {{"seed", "1"}, {"h", "0.75"}, {"generator", "test"}});
    const auto path = tmp_file("subdiff_trace_roundtrip.csv");
    write_trace_csv(path.string(), original);
    const Trace restored = read_trace_csv(path.string());
    REQUIRE(restored.size() == original.size());
    CHECK(restored.dt() == original.dt());
    CHECK(restored.start_time() == original.start_time());
    for (std::size_t i = 0; i < original.size(); ++i)
        CHECK(restored.value(i) == original.value(i));
    CHECK(restored.meta().at("h") == "0.75");
    CHECK(restored.meta().at("generator") == "test");
    std::filesystem::remove(path);
}

TEST_CASE("parse errors carry line numbers") {
    const auto path = tmp_file("subdiff_bad.csv");
    {
        std::ofstream out(path);
        out << "# seed=1\n" << "time,value\n" << "0,1.5\n" << "1,not_a_number\n";
    }
    try {
        (void)read_trace_csv(path.string());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
    std::filesystem::remove(path);
}

TEST_CASE("missing header is rejected") {
    const auto path = tmp_file("subdiff_noheader.csv");
    {
        std::ofstream out(path);
        out << "0,1.5\n" << "1,2.5\n";
    }
    CHECK_THROWS_AS((void)read_trace_csv(path.string()), ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("field count mismatches are rejected") {
    const auto path = tmp_file("subdiff_fields.csv");
    {
        std::ofstream out(path);
        out << "time,value\n" << "0,1.5,9\n";
    }
    CHECK_THROWS_AS((void)read_table_csv(path.string()), ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("tables preserve metadata and columns") {
    Table t;
    t.columns = {"lag", "mean", "stderr"};
    t.meta = {{"paths", "500"}, {"h", "0.75"}};
    t.rows = {{0.0, 1.0, 0.01}, {0.5, 0.8, 0.02}};
    const auto path = tmp_file("subdiff_table.csv");
    write_table_csv(path.string(), t);
    const Table r = read_table_csv(path.string());
    REQUIRE(r.columns.size() == 3);
    CHECK(r.columns[2] == "stderr");
    CHECK(r.meta.at("paths") == "500");
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[1][1] == doctest::Approx(0.8));
    std::filesystem::remove(path);
}

} // TEST_SUITE
