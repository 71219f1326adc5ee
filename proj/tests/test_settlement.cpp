#include <doctest.h>

#include <cmath>

#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/rng.hpp"
#include "cluster_dispatch/settlement.hpp"

using namespace cluster_dispatch;

namespace {

const PricingScheme kPrices{0.16, 0.05, 0.10};

EnergyFlowLedger one_hour_ledger(double grid_import, double grid_export) {
    EnergyFlowLedger ledger;
    ledger.building_ids = {"A"};
    ledger.rows = {{FlowRow{}}};
    ledger.totals = {HourTotals{grid_import, grid_export, 0.0}};
    return ledger;
}

DayReport report_with(double sc, double cost) {
    DayReport r;
    r.self_consumption = sc;
    r.cost = cost;
    return r;
}

} // namespace

TEST_CASE("sharing matches deficits against surpluses pro rata") {
    // building 1 needs 5; buildings 2 and 3 offer 3 and 4
    const std::vector<double> nets{5.0, -3.0, -4.0};
    const SettledHour s = settle_hour(nets, true);

    CHECK(s.totals.matched == doctest::Approx(5.0));
    CHECK(s.cluster_trade[0] == doctest::Approx(-5.0));
    CHECK(s.cluster_trade[1] == doctest::Approx(3.0 / 7.0 * 5.0));
    CHECK(s.cluster_trade[2] == doctest::Approx(4.0 / 7.0 * 5.0));
    CHECK(s.grid_flow[0] == doctest::Approx(0.0));
    CHECK(s.grid_flow[1] == doctest::Approx(3.0 - 15.0 / 7.0));
    CHECK(s.grid_flow[2] == doctest::Approx(4.0 - 20.0 / 7.0));
    CHECK(s.totals.grid_export == doctest::Approx(2.0));
    CHECK(s.totals.grid_import == doctest::Approx(0.0));
}

TEST_CASE("without sharing every position goes to the grid") {
    const std::vector<double> nets{5.0, -3.0, -4.0};
    const SettledHour s = settle_hour(nets, false);
    CHECK(s.grid_flow[0] == -5.0);
    CHECK(s.grid_flow[1] == 3.0);
    CHECK(s.grid_flow[2] == 4.0);
    CHECK(s.totals.grid_import == doctest::Approx(5.0));
    CHECK(s.totals.grid_export == doctest::Approx(7.0));
    for (double t : s.cluster_trade) CHECK(t == 0.0);
}

TEST_CASE("balanced hour settles to nothing") {
    const std::vector<double> nets{0.0, 0.0, 0.0};
    for (bool sharing : {false, true}) {
        const SettledHour s = settle_hour(nets, sharing);
        for (double v : s.grid_flow) CHECK(v == 0.0);
        for (double v : s.cluster_trade) CHECK(v == 0.0);
        CHECK(s.totals.grid_import == 0.0);
        CHECK(s.totals.grid_export == 0.0);
    }
}

TEST_CASE("settlement conserves energy and nets cluster trades to zero") {
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> nets(2 + rng.uniform_index(4));
        for (auto& n : nets) n = rng.uniform(-8.0, 8.0);
        for (bool sharing : {false, true}) {
            const SettledHour s = settle_hour(nets, sharing);
            double trade_sum = 0.0;
            for (std::size_t j = 0; j < nets.size(); ++j) {
                // conservation per building: settled flows absorb the net
                CHECK(std::abs(s.cluster_trade[j] + s.grid_flow[j] + nets[j]) <= 1e-9);
                trade_sum += s.cluster_trade[j];
            }
            CHECK(std::abs(trade_sum) <= 1e-9);
        }
        // sharing never increases the cluster's grid export
        const SettledHour with = settle_hour(nets, true);
        const SettledHour without = settle_hour(nets, false);
        CHECK(with.totals.grid_export <= without.totals.grid_export + 1e-12);
        CHECK(with.totals.grid_import <= without.totals.grid_import + 1e-12);
    }
}

TEST_CASE("per-building payments sum to the cluster bill for any cluster price") {
    Rng rng(43);
    for (double cluster_price : {0.05, 0.10, 0.16}) {
        PricingScheme pricing{0.16, 0.05, cluster_price};
        std::vector<double> nets{6.0, -2.5, -1.0, 3.0};
        const SettledHour s = settle_hour(nets, true);
        double building_total = 0.0;
        for (std::size_t j = 0; j < nets.size(); ++j) {
            const double imports = s.grid_flow[j] < 0.0 ? -s.grid_flow[j] : 0.0;
            const double exports = s.grid_flow[j] > 0.0 ? s.grid_flow[j] : 0.0;
            const double bought = s.cluster_trade[j] < 0.0 ? -s.cluster_trade[j] : 0.0;
            const double sold = s.cluster_trade[j] > 0.0 ? s.cluster_trade[j] : 0.0;
            building_total += imports * pricing.buy - exports * pricing.sell +
                              bought * pricing.cluster - sold * pricing.cluster;
        }
        const double cluster_bill =
            s.totals.grid_import * pricing.buy - s.totals.grid_export * pricing.sell;
        CHECK(building_total == doctest::Approx(cluster_bill).epsilon(1e-12));
        (void)rng;
    }
}

TEST_CASE("self-consumption follows 1 - export/generation") {
    CHECK(*self_consumption(one_hour_ledger(0, 0), 100.0) == doctest::Approx(1.0));
    CHECK(*self_consumption(one_hour_ledger(0, 100.0), 100.0) == doctest::Approx(0.0));
    CHECK(*self_consumption(one_hour_ledger(0, 14.1), 50.0) == doctest::Approx(0.718));
    CHECK_FALSE(self_consumption(one_hour_ledger(0, 0), 0.0).has_value());
}

TEST_CASE("daily cluster cost prices imports and exports") {
    CHECK(daily_cluster_cost(one_hour_ledger(10.0, 0.0), kPrices) == doctest::Approx(1.60));
    CHECK(daily_cluster_cost(one_hour_ledger(0.0, 10.0), kPrices) == doctest::Approx(-0.50));
    CHECK(daily_cluster_cost(one_hour_ledger(0.0, 0.0), kPrices) == 0.0);
}

TEST_CASE("identical scenario reports show zero improvement") {
    std::vector<DayReport> same{report_with(0.8, 12.0)};
    const auto cmp = compare_scenarios(same, same, same);
    REQUIRE(cmp.rows.size() == 1);
    CHECK(*cmp.rows[0].sc_impr_s2 == doctest::Approx(0.0));
    CHECK(*cmp.rows[0].sc_impr_s3 == doctest::Approx(0.0));
    CHECK(*cmp.rows[0].cost_impr_s2 == doctest::Approx(0.0));
    CHECK(*cmp.rows[0].cost_impr_s3 == doctest::Approx(0.0));
}

TEST_CASE("self-consumption improvements reproduce the reference rounding") {
    // 60.2% / 64.2% / 66.2% relative gains round to 7% and 10%
    std::vector<DayReport> s1{report_with(0.602, 1.0)};
    std::vector<DayReport> s2{report_with(0.642, 1.0)};
    std::vector<DayReport> s3{report_with(0.662, 1.0)};
    const auto cmp = compare_scenarios(s1, s2, s3);
    CHECK(std::lround(*cmp.rows[0].sc_impr_s2) == 7);
    CHECK(std::lround(*cmp.rows[0].sc_impr_s3) == 10);
}

TEST_CASE("cost improvements reproduce the reference arithmetic") {
    // 29.2 / 24.2 / 21.7 reduce by 17% and 26%
    std::vector<DayReport> s1{report_with(0.8, 29.2)};
    std::vector<DayReport> s2{report_with(0.8, 24.2)};
    std::vector<DayReport> s3{report_with(0.8, 21.7)};
    const auto cmp = compare_scenarios(s1, s2, s3);
    CHECK(std::lround(*cmp.rows[0].cost_impr_s2) == 17);
    CHECK(std::lround(*cmp.rows[0].cost_impr_s3) == 26);
}

TEST_CASE("mismatched day counts are rejected") {
    std::vector<DayReport> one{report_with(0.5, 1.0)};
    std::vector<DayReport> two{report_with(0.5, 1.0), report_with(0.5, 1.0)};
    CHECK_THROWS_AS(compare_scenarios(one, one, two), ConfigError);
}
