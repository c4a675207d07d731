#include <doctest.h>

#include <random>
#include <string>

#include "golden_table.hpp"
#include "streamsim/trace.hpp"

using namespace streamsim;

namespace {

// Random valid tables for round-trip properties: strictly decreasing PSNR
// and bitrate per stream.
TraceTable random_table(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> streams_dist(1, 6);
    std::uniform_int_distribution<int> modes_dist(2, 5);
    std::uniform_real_distribution<double> psnr_top(38.0, 46.0);
    std::uniform_real_distribution<double> drop(0.5, 4.0);
    std::uniform_real_distribution<double> rate_top(8000.0, 30000.0);
    std::uniform_real_distribution<double> rate_frac(0.3, 0.8);

    int n_streams = streams_dist(rng);
    int n_modes = modes_dist(rng);
    std::vector<TraceEntry> entries;
    for (int s = 1; s <= n_streams; ++s) {
        double psnr = psnr_top(rng);
        double rate = rate_top(rng);
        for (int m = 0; m < n_modes; ++m) {
            entries.push_back({s, {0, 20 + 5 * m}, psnr, rate});
            psnr -= drop(rng);
            rate *= rate_frac(rng);
        }
    }
    return TraceTable(std::move(entries), 1.0);
}

}  // namespace

TEST_CASE("builtin table matches the published per-stream values") {
    const TraceTable& t = builtin_table1();
    CHECK(t.stream_count() == 10);
    CHECK(t.modes().size() == 4);
    CHECK(t.stream_duration_s() == 1.0);
    CHECK(t.entries().size() == 40);

    REQUIRE(t.modes()[0] == QualityMode{1, 22});
    REQUIRE(t.modes()[1] == QualityMode{2, 27});
    REQUIRE(t.modes()[2] == QualityMode{3, 32});
    REQUIRE(t.modes()[3] == QualityMode{4, 37});

    for (const auto& row : golden::kRows) {
        const TraceEntry& e = t.entry(row.stream, row.qp);
        CHECK(e.psnr_db == row.psnr_db);
        CHECK(e.bitrate_kbps == row.bitrate_kbps);
    }
    CHECK(validate(t).empty());
}

TEST_CASE("entry lookups") {
    const TraceTable& t = builtin_table1();
    CHECK(t.entry(1, 22).psnr_db == 41.64);
    CHECK(t.entry(1, 22).bitrate_kbps == 26496);
    CHECK(t.entry(2, 27).psnr_db == 39.07);
    CHECK(t.entry(2, 27).bitrate_kbps == 10811);
    CHECK(t.entry(10, 37).psnr_db == 33.89);
    CHECK(t.entry(10, 37).bitrate_kbps == 2735);
    CHECK(t.entry(5, 32).psnr_db == 36.57);
    CHECK(t.entry(5, 32).bitrate_kbps == 5095);

    CHECK_THROWS_AS((void)t.entry(11, 22), std::out_of_range);
    CHECK_THROWS_AS((void)t.entry(0, 22), std::out_of_range);
    CHECK_THROWS_AS((void)t.entry(1, 25), std::out_of_range);
}

TEST_CASE("bits_for converts Kbps to per-stream bits") {
    const TraceTable& t = builtin_table1();
    CHECK(bits_for(t.entry(1, 22), 1.0) == 26'496'000.0);
    CHECK(bits_for(t.entry(1, 37), 1.0) == 2'621'000.0);
    CHECK_THROWS_AS((void)bits_for(t.entry(1, 22), 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)bits_for(t.entry(1, 22), -1.0), std::invalid_argument);

    // Linear in duration and bitrate.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> rate(1.0, 50000.0);
    std::uniform_real_distribution<double> dur(0.01, 10.0);
    for (int i = 0; i < 200; ++i) {
        TraceEntry e{1, {1, 22}, 40.0, rate(rng)};
        double d = dur(rng);
        CHECK(bits_for(e, 2.0 * d) == doctest::Approx(2.0 * bits_for(e, d)));
        TraceEntry e2 = e;
        e2.bitrate_kbps *= 4.0;
        CHECK(bits_for(e2, d) == doctest::Approx(4.0 * bits_for(e, d)));
    }
}

TEST_CASE("serialize and parse round-trip") {
    const TraceTable& t = builtin_table1();
    TraceTable back = parse_trace_csv(serialize_trace_csv(t));
    CHECK(back == t);

    std::mt19937_64 rng(12345);
    for (int i = 0; i < 50; ++i) {
        TraceTable table = random_table(rng);
        REQUIRE(validate(table).empty());
        TraceTable reparsed = parse_trace_csv(serialize_trace_csv(table));
        CHECK(reparsed == table);
    }
}

TEST_CASE("parsing a minimal one-stream file") {
    const char* text =
        "stream,qp,psnr_db,bitrate_kbps\n"
        "1,22,41.0,20000\n"
        "1,27,39.0,10000\n"
        "1,32,37.0,5000\n"
        "1,37,35.0,2500\n";
    TraceTable t = parse_trace_csv(text);
    CHECK(t.stream_count() == 1);
    CHECK(t.modes().size() == 4);
    CHECK(t.entry(1, 27).bitrate_kbps == 10000);
}

TEST_CASE("row order in the file does not matter") {
    const char* text =
        "stream,qp,psnr_db,bitrate_kbps\n"
        "1,37,35.0,2500\n"
        "1,22,41.0,20000\n"
        "1,32,37.0,5000\n"
        "1,27,39.0,10000\n";
    TraceTable t = parse_trace_csv(text);
    CHECK(validate(t).empty());
    CHECK(t.entry(1, 22).psnr_db == 41.0);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS((void)parse_trace_csv("bogus header\n1,2,3,4\n"), TraceParseError);
    try {
        (void)parse_trace_csv("stream,qp,psnr_db,bitrate_kbps\n1,22,41.0\n");
        FAIL("expected TraceParseError");
    } catch (const TraceParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("4 columns") != std::string::npos);
    }
    try {
        (void)parse_trace_csv("stream,qp,psnr_db,bitrate_kbps\n1,22,41.0,20000\n1,27,x,9\n");
        FAIL("expected TraceParseError");
    } catch (const TraceParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS((void)parse_trace_csv(""), TraceParseError);
}

TEST_CASE("monotonicity violation names the offending stream") {
    // Stream 1's QP27 bitrate exceeds its QP22 bitrate.
    const char* text =
        "stream,qp,psnr_db,bitrate_kbps\n"
        "1,22,41.0,20000\n"
        "1,27,39.0,25000\n"
        "1,32,37.0,5000\n"
        "1,37,35.0,2500\n";
    try {
        (void)parse_trace_csv(text);
        FAIL("expected TraceValidationError");
    } catch (const TraceValidationError& e) {
        REQUIRE(e.violations.size() == 1);
        CHECK(e.violations[0].kind == TraceViolation::Kind::bitrate_not_decreasing);
        CHECK(e.violations[0].stream == 1);
        CHECK(std::string(e.what()).find("stream 1") != std::string::npos);
    }
}

TEST_CASE("validate reports missing and duplicate pairs") {
    // Build an invalid table directly: drop (3, QP32) from the builtin.
    std::vector<TraceEntry> entries;
    for (const auto& e : builtin_table1().entries())
        if (!(e.stream == 3 && e.quality.qp == 32)) entries.push_back(e);
    auto violations = validate(TraceTable(std::move(entries)));
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == TraceViolation::Kind::missing_entry);
    CHECK(violations[0].stream == 3);
    CHECK(violations[0].qp == 32);

    auto dup = builtin_table1().entries();
    dup.push_back(dup.front());
    auto dup_violations = validate(TraceTable(std::move(dup)));
    REQUIRE(dup_violations.size() == 1);
    CHECK(dup_violations[0].kind == TraceViolation::Kind::duplicate_entry);
    CHECK(dup_violations[0].stream == 1);
}

TEST_CASE("equal PSNR across adjacent modes breaks strictness") {
    std::vector<TraceEntry> entries = {
        {1, {0, 22}, 41.0, 20000},
        {1, {0, 27}, 41.0, 10000},  // PSNR tie with QP22
        {1, {0, 32}, 37.0, 5000},
    };
    auto violations = validate(TraceTable(std::move(entries)));
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == TraceViolation::Kind::psnr_not_decreasing);
    CHECK(violations[0].stream == 1);
    CHECK(violations[0].qp == 27);
}

TEST_CASE("validate flags empty tables and bad bitrates") {
    CHECK(validate(TraceTable(std::vector<TraceEntry>{})).size() == 1);
    CHECK(validate(TraceTable(std::vector<TraceEntry>{})).front().kind ==
          TraceViolation::Kind::empty_table);

    std::vector<TraceEntry> entries = {
        {1, {0, 22}, 41.0, 20000},
        {1, {0, 27}, 39.0, 0.0},
    };
    auto violations = validate(TraceTable(std::move(entries)));
    bool saw_nonpositive = false;
    for (const auto& v : violations)
        saw_nonpositive |= v.kind == TraceViolation::Kind::nonpositive_bitrate;
    CHECK(saw_nonpositive);
}

TEST_CASE("a full file of the builtin rows parses back to the builtin") {
    std::string text = "stream,qp,psnr_db,bitrate_kbps\n";
    for (const auto& r : golden::kRows) {
        text += std::to_string(r.stream) + "," + std::to_string(r.qp) + "," +
                std::to_string(r.psnr_db) + "," + std::to_string(r.bitrate_kbps) + "\n";
    }
    TraceTable t = parse_trace_csv(text);
    CHECK(t == builtin_table1());
}
