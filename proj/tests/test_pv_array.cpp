#include <doctest.h>

#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/pv_array.hpp"

using namespace cluster_dispatch;

namespace {
const PVSpec kRef{0.9, 1.0, 0.15, 100.0};
}

TEST_CASE("pv power from irradiance") {
    CHECK(pv_power_kw(kRef, 0.0) == 0.0);
    // 0.9 * 1.0 * 1000 * 0.15 * 100 / 1000
    CHECK(pv_power_kw(kRef, 1000.0) == doctest::Approx(13.5).epsilon(1e-12));
    CHECK_THROWS_AS(pv_power_kw(kRef, -1.0), ConfigError);
}

TEST_CASE("pv power is linear in area and irradiance") {
    PVSpec doubled = kRef;
    doubled.area_m2 = 200.0;
    CHECK(pv_power_kw(doubled, 800.0) == doctest::Approx(2.0 * pv_power_kw(kRef, 800.0)));
    CHECK(pv_power_kw(kRef, 500.0) * 2.0 == doctest::Approx(pv_power_kw(kRef, 1000.0)));
}

TEST_CASE("output is zero iff a factor is zero") {
    PVSpec dark = kRef;
    dark.cover_transmittance = 0.0;
    CHECK(pv_power_kw(dark, 900.0) == 0.0);
    CHECK(pv_power_kw(kRef, 900.0) > 0.0);
}

TEST_CASE("spec validation") {
    CHECK_NOTHROW(kRef.validate());
    PVSpec bad = kRef;
    bad.efficiency = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = kRef;
    bad.area_m2 = -5.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = kRef;
    bad.incidence_modifier = 1.2;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("generation series maps elementwise") {
    TimeSeries irr;
    irr.unit = Unit::WPerM2;
    irr.values = {0.0, 1000.0, 250.0};
    const TimeSeries gen = generation_series(kRef, irr);
    CHECK(gen.unit == Unit::kWhPerSlot);
    REQUIRE(gen.size() == 3);
    CHECK(gen.values[0] == 0.0);
    CHECK(gen.values[1] == doctest::Approx(13.5));
    CHECK(gen.values[2] == doctest::Approx(13.5 / 4.0));

    // linearity: the sum of outputs equals the output of the summed input
    const double summed = pv_power_kw(kRef, 1250.0);
    CHECK(gen.sum() == doctest::Approx(summed).epsilon(1e-12));

    TimeSeries wrong;
    wrong.unit = Unit::kWhPerSlot;
    wrong.values = {1.0};
    CHECK_THROWS_AS(generation_series(kRef, wrong), ConfigError);
}
