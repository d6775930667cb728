#include <doctest.h>

#include <random>
#include <sstream>

#include "mcs/bfile.hpp"
#include "mcs/errors.hpp"
#include "mcs/report.hpp"

using namespace mcs;

TEST_CASE("b-file parsing") {
    std::istringstream in("# comment\n5 10\n6 -3\n\n7 123456789012345678901234567890\r\n");
    const BFile f = parse_bfile(in);
    REQUIRE(f.records.size() == 3);
    CHECK(f.offset() == 5);
    CHECK(f.records[1].value == -3);
    CHECK(f.records[2].value == Term("123456789012345678901234567890", 10));
}

TEST_CASE("malformed b-files report the line") {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            parse_bfile(in);
        } catch (const MalformedInput& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("0 1\n1\n") == 2);
    CHECK(line_of("# c\n0 1\n1 x\n") == 3);
    CHECK(line_of("0 1\n2 1\n") == 2);   // gap
    CHECK(line_of("3 1\n2 1\n") == 2);   // decreasing
    CHECK(line_of("0 1 2\n") == 1);
    CHECK(line_of("0 1\n1 2\n") == 0);
}

TEST_CASE("written b-files parse back to the same records") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Term> values;
        const auto len = rng() % 50;
        for (std::size_t i = 0; i < len; ++i) {
            Term v(static_cast<unsigned long>(rng()));
            v *= static_cast<unsigned long>(rng());
            values.push_back(v);
        }
        const BFile original = BFile::from_terms(values, static_cast<std::int64_t>(rng() % 7));
        std::stringstream buf;
        write_bfile(buf, original);
        CHECK(parse_bfile(buf).records == original.records);
    }
}

TEST_CASE("b-file serialization is index SPACE value NEWLINE") {
    std::ostringstream out;
    write_bfile(out, BFile::from_terms({Term(0), Term(1), Term(1)}, 0));
    CHECK(out.str() == "0 0\n1 1\n2 1\n");
}

TEST_CASE("run reports round-trip through JSON") {
    RunReport r{"verify", {{"x", 2}, {"rho", 9}}, "witness"};
    r.details["witness"] = {{"n", 0}, {"expected", "28"}};
    r.timings_ms["floor"] = 0.125;
    const auto j = to_json(r);
    CHECK(j.at("schema") == kReportSchema);
    CHECK(report_from_json(j) == r);
    CHECK(report_from_json(nlohmann::ordered_json::parse(j.dump())) == r);

    RunReport untimed{"pi", {{"x", 2}}, "pass"};
    CHECK_FALSE(to_json(untimed).contains("timings_ms"));
    CHECK(report_from_json(to_json(untimed)) == untimed);
}

TEST_CASE("report schema is checked") {
    auto j = to_json(RunReport{"pi", {}, "pass"});
    j["schema"] = "mcs-report/0";
    CHECK_THROWS_AS(report_from_json(j), MalformedInput);
    j.erase("schema");
    CHECK_THROWS_AS(report_from_json(j), MalformedInput);
}
