#include <doctest.h>

#include <sstream>

#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/pricing.hpp"
#include "cluster_dispatch/rng.hpp"
#include "cluster_dispatch/time_series.hpp"

using namespace cluster_dispatch;

namespace {

std::string csv_of(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::string text = "timestamp,value\n";
    for (const auto& [t, v] : rows) text += t + "," + v + "\n";
    return text;
}

TimeSeries parse_csv(const std::string& text, Unit unit = Unit::kWhPerSlot) {
    std::istringstream in(text);
    return parse_profile(in, unit, "test.csv");
}

} // namespace

TEST_CASE("timestamps parse and format hour-aligned") {
    const EpochHour h = parse_hour_timestamp("2022-06-20T07:00");
    CHECK(format_hour_timestamp(h) == "2022-06-20T07:00");
    CHECK(parse_hour_timestamp("2022-06-20 07:00:00") == h);
    CHECK(parse_hour_timestamp("2022-06-20T08:00") == h + 1);
    CHECK_THROWS_AS(parse_hour_timestamp("2022-06-20T07:30"), ConfigError);
    CHECK_THROWS_AS(parse_hour_timestamp("2022-13-01T00:00"), ConfigError);
    CHECK_THROWS_AS(parse_hour_timestamp("garbage"), ConfigError);
}

TEST_CASE("zero profile loads as zeros") {
    std::vector<std::pair<std::string, std::string>> rows;
    for (int h = 0; h < 24; ++h) {
        char ts[24];
        std::snprintf(ts, sizeof ts, "2022-06-20T%02d:00", h);
        rows.push_back({ts, "0"});
    }
    const TimeSeries s = parse_csv(csv_of(rows));
    REQUIRE(s.size() == 24);
    for (double v : s.values) CHECK(v == 0.0);
    CHECK(s.start == parse_hour_timestamp("2022-06-20T00:00"));
}

TEST_CASE("gap in timestamps is reported with the missing hour") {
    const std::string text = csv_of({{"2022-06-20T00:00", "1.0"}, {"2022-06-20T02:00", "2.0"}});
    CHECK_THROWS_WITH_AS(parse_csv(text),
                         doctest::Contains("missing 2022-06-20T01:00"), ConfigError);
}

TEST_CASE("synthetic week sums to an independently accumulated checksum") {
    // The oracle: accumulate the column total while writing the rows, with
    // values kept as short decimals so the text is exact.
    Rng rng(42);
    std::vector<std::pair<std::string, std::string>> rows;
    double checksum = 0.0;
    const EpochHour t0 = parse_hour_timestamp("2022-06-20T00:00");
    for (int h = 0; h < 168; ++h) {
        const double v = std::round(rng.uniform(0.0, 12.0) * 1000.0) / 1000.0;
        checksum += v;
        rows.push_back({format_hour_timestamp(t0 + h), format_double(v)});
    }
    const TimeSeries s = parse_csv(csv_of(rows));
    REQUIRE(s.size() == 168);
    CHECK(s.sum() == doctest::Approx(checksum).epsilon(1e-12));
}

TEST_CASE("malformed rows are rejected with their row number") {
    CHECK_THROWS_WITH_AS(parse_csv(csv_of({{"2022-06-20T00:00", "1"}, {"2022-06-20T01:00", "abc"}})),
                         doctest::Contains("row 3"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_csv(csv_of({{"2022-06-20T00:00", "-1.5"}})),
                         doctest::Contains("negative"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_csv(csv_of({{"2022-06-20T01:00", "1"}, {"2022-06-20T01:00", "1"}})),
                         doctest::Contains("not strictly increasing"), ConfigError);
    CHECK_THROWS_AS(parse_csv("wrong,header\n"), ConfigError);
    CHECK_THROWS_AS(parse_csv("timestamp,value\n"), ConfigError);
}

TEST_CASE("missing file is reported") {
    CHECK_THROWS_WITH_AS(load_profile("/no/such/profile.csv", Unit::kWhPerSlot),
                         doctest::Contains("/no/such/profile.csv"), ConfigError);
}

TEST_CASE("csv round trip is exact") {
    Rng rng(7);
    TimeSeries s;
    s.start = parse_hour_timestamp("2022-06-20T00:00");
    s.unit = Unit::kWhPerSlot;
    for (int i = 0; i < 200; ++i) {
        // decimals with up to 6 fractional digits
        const double v = std::round(rng.uniform(0.0, 50.0) * 1e6) / 1e6;
        s.values.push_back(v);
    }
    const TimeSeries back = parse_csv(profile_to_csv(s));
    REQUIRE(back.size() == s.size());
    CHECK(back.start == s.start);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(back.values[i] == s.values[i]);
}

TEST_CASE("slice returns the requested window") {
    TimeSeries week;
    week.start = parse_hour_timestamp("2022-06-20T00:00");
    for (int i = 0; i < 168; ++i) week.values.push_back(i);

    const TimeSeries head = slice(week, 0, 24);
    CHECK(head.values.front() == 0.0);
    CHECK(head.values.back() == 23.0);

    const TimeSeries tail = slice(week, 144, 24);
    CHECK(tail.values.front() == 144.0);
    CHECK(tail.values.back() == 167.0);
    CHECK(tail.start == week.start + 144);

    CHECK_THROWS_AS(slice(week, 160, 24), ConfigError);
    CHECK_THROWS_AS(slice_at(week, week.start - 1, 4), ConfigError);
    CHECK(slice_at(week, week.start + 10, 5).values.front() == 10.0);
}

TEST_CASE("adjacent slices concatenate to one larger slice") {
    Rng rng(3);
    TimeSeries s;
    s.start = 0;
    for (int i = 0; i < 96; ++i) s.values.push_back(rng.uniform(0.0, 9.0));
    const int cases[][3] = {{0, 24, 24}, {10, 7, 30}, {50, 1, 45}};
    for (const auto& c : cases) {
        const int t = c[0], n = c[1], m = c[2];
        const TimeSeries a = slice(s, t, n);
        const TimeSeries b = slice(s, t + n, m);
        const TimeSeries whole = slice(s, t, n + m);
        std::vector<double> joined = a.values;
        joined.insert(joined.end(), b.values.begin(), b.values.end());
        CHECK(joined == whole.values);
    }
}

TEST_CASE("pricing ordering is enforced") {
    PricingScheme ok{0.16, 0.05, 0.10};
    CHECK_NOTHROW(ok.validate());
    CHECK_THROWS_AS((PricingScheme{0.16, 0.12, 0.10}).validate(), ConfigError); // sell > cluster
    CHECK_THROWS_AS((PricingScheme{0.08, 0.05, 0.10}).validate(), ConfigError); // cluster > buy
    CHECK_THROWS_AS((PricingScheme{0.16, -0.01, 0.10}).validate(), ConfigError);
}

TEST_CASE("unit tags") {
    CHECK(unit_from_name("kWh") == Unit::kWhPerSlot);
    CHECK(unit_from_name("W_per_m2") == Unit::WPerM2);
    CHECK(unit_name(Unit::kW) == "kW");
    CHECK_THROWS_AS(unit_from_name("MWh"), ConfigError);
}
