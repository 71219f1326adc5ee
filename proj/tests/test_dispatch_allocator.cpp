#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "cluster_dispatch/dispatch_allocator.hpp"
#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/rng.hpp"

using namespace cluster_dispatch;

namespace {

double objective(const HourAllocationProblem& p, std::span<const double> rates) {
    double obj = 0.0;
    for (std::size_t j = 0; j < rates.size(); ++j) {
        const double net = p.buildings[j].net_load_kwh + rates[j] * p.tau_hours;
        obj += (net * p.price) * (net * p.price);
    }
    return obj;
}

// Grid search over the equality-constrained simplex: the first n-1 rates on
// a uniform grid, the last forced by the equality.
double grid_search_optimum(const HourAllocationProblem& p, double resolution) {
    const std::size_t n = p.buildings.size();
    std::vector<RateInterval> box(n);
    for (std::size_t j = 0; j < n; ++j) box[j] = feasible_interval(p.buildings[j], p.tau_hours);

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> rates(n, 0.0);
    std::vector<long> steps(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j)
        steps[j] = std::lround((box[j].hi - box[j].lo) / resolution);

    std::vector<long> idx(n - 1, 0);
    for (;;) {
        double sum = 0.0;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            rates[j] = box[j].lo + resolution * static_cast<double>(idx[j]);
            sum += rates[j];
        }
        rates[n - 1] = p.target_rate_kw - sum;
        if (rates[n - 1] >= box[n - 1].lo - 1e-12 && rates[n - 1] <= box[n - 1].hi + 1e-12)
            best = std::min(best, objective(p, rates));
        std::size_t carry = 0;
        while (carry < idx.size()) {
            if (++idx[carry] <= steps[carry]) break;
            idx[carry] = 0;
            ++carry;
        }
        if (carry == idx.size()) break;
    }
    return best;
}

BuildingHourState state(double net, double stored, double cap = 20.0, double rate = 6.0) {
    return {net, stored, cap, rate};
}

} // namespace

TEST_CASE("one building takes the whole target") {
    HourAllocationProblem p;
    p.target_rate_kw = 4.0;
    p.buildings = {state(2.0, 5.0)};
    const auto rates = allocate_hour(p);
    REQUIRE(rates.size() == 1);
    CHECK(rates[0] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("identical buildings split the target evenly") {
    HourAllocationProblem p;
    p.target_rate_kw = 4.0;
    p.buildings = {state(3.0, 8.0), state(3.0, 8.0)};
    const auto rates = allocate_hour(p);
    CHECK(rates[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rates[1] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("unequal net loads equalize: (3,1) with target 2 goes (0,2)") {
    HourAllocationProblem p;
    p.target_rate_kw = 2.0;
    p.buildings = {state(3.0, 10.0), state(1.0, 10.0)};
    const auto rates = allocate_hour(p);
    CHECK(rates[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rates[1] == doctest::Approx(2.0).epsilon(1e-9));
    // cross-checked against the grid oracle
    const double grid = grid_search_optimum(p, 0.01);
    CHECK(objective(p, rates) <= grid + 1e-9);
}

TEST_CASE("allocator matches the grid oracle on random instances") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        HourAllocationProblem p;
        const std::size_t n = 2 + rng.uniform_index(2);
        double lo_sum = 0.0, hi_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double net = std::round(rng.uniform(-6.0, 6.0) * 20.0) / 20.0;
            const double stored = std::round(rng.uniform(0.0, 20.0) * 20.0) / 20.0;
            p.buildings.push_back(state(net, stored));
            const auto iv = feasible_interval(p.buildings.back(), 1.0);
            lo_sum += iv.lo;
            hi_sum += iv.hi;
        }
        p.target_rate_kw = std::round(rng.uniform(lo_sum, hi_sum) * 20.0) / 20.0;
        p.target_rate_kw = std::clamp(p.target_rate_kw, lo_sum, hi_sum);
        const auto rates = allocate_hour(p);

        const double sum = std::accumulate(rates.begin(), rates.end(), 0.0);
        CHECK(std::abs(sum - p.target_rate_kw) <=
              kAllocationResidualTol * std::max(1.0, std::abs(p.target_rate_kw)));
        for (std::size_t j = 0; j < n; ++j) {
            const auto iv = feasible_interval(p.buildings[j], 1.0);
            CHECK(rates[j] >= iv.lo - 1e-9);
            CHECK(rates[j] <= iv.hi + 1e-9);
        }
        // never worse than any grid point (grid may be worse than the
        // continuous optimum, never better beyond rounding)
        const double grid = grid_search_optimum(p, 0.05);
        CHECK(objective(p, rates) <= grid + 1e-9);
    }
}

TEST_CASE("allocation is invariant to a positive price rescaling") {
    HourAllocationProblem p;
    p.target_rate_kw = -3.0;
    p.buildings = {state(4.0, 12.0), state(-1.0, 3.0), state(2.0, 19.5)};
    const auto rates_a = allocate_hour(p);
    p.price *= 7.5;
    const auto rates_b = allocate_hour(p);
    for (std::size_t j = 0; j < rates_a.size(); ++j)
        CHECK(rates_a[j] == doctest::Approx(rates_b[j]).epsilon(1e-12));
}

TEST_CASE("zero price splits proportionally to interval width") {
    HourAllocationProblem p;
    p.price = 0.0;
    p.target_rate_kw = 3.0;
    p.buildings = {state(5.0, 10.0, 20.0, 6.0), state(-2.0, 17.0, 20.0, 6.0)};
    // intervals: [-6, 6] width 12 and [-6, 3] width 9
    const auto rates = allocate_hour(p);
    const double theta = (3.0 - (-12.0)) / 21.0;
    CHECK(rates[0] == doctest::Approx(-6.0 + 12.0 * theta));
    CHECK(rates[1] == doctest::Approx(-6.0 + 9.0 * theta));
    CHECK(rates[0] + rates[1] == doctest::Approx(3.0));
}

TEST_CASE("infeasible targets report the aggregate slack") {
    HourAllocationProblem p;
    p.target_rate_kw = 15.0; // two full batteries can absorb nothing
    p.buildings = {state(0.0, 20.0), state(0.0, 20.0)};
    CHECK_THROWS_WITH_AS(allocate_hour(p), doctest::Contains("slack"), InfeasibleError);
}

TEST_CASE("allocate_day chains stored energy between hours") {
    std::vector<BuildingDayInput> buildings(2);
    buildings[0] = {"A", {1.0, 1.0, 1.0, 1.0}, 6.0, {20.0, 6.0}};
    buildings[1] = {"B", {2.0, 2.0, 2.0, 2.0}, 10.0, {20.0, 6.0}};

    SUBCASE("all-zero plan with equal net loads keeps everything flat") {
        auto equal = buildings;
        equal[1].net_load_kwh = equal[0].net_load_kwh;
        equal[1].initial_stored_kwh = equal[0].initial_stored_kwh;
        const std::vector<double> zeros(4, 0.0);
        const auto alloc = allocate_day(zeros, equal, 0.16, 1.0, AllocationPolicy::Strict);
        for (const auto& rates : alloc.building_rates_kw)
            for (double u : rates) CHECK(u == doctest::Approx(0.0));
        CHECK(alloc.total_clamped_kwh == 0.0);
    }
    SUBCASE("zero aggregate rate may still shift energy between batteries") {
        // unequal net loads: the squared objective is minimized by evening
        // them out, never by idling
        const std::vector<double> zeros(4, 0.0);
        const auto alloc = allocate_day(zeros, buildings, 0.16, 1.0, AllocationPolicy::Strict);
        for (std::size_t i = 0; i < 4; ++i) {
            double sum = 0.0, obj = 0.0, idle_obj = 0.0;
            for (std::size_t j = 0; j < 2; ++j) {
                const double u = alloc.building_rates_kw[j][i];
                sum += u;
                const double net = buildings[j].net_load_kwh[i] + u;
                obj += net * net;
                idle_obj += buildings[j].net_load_kwh[i] * buildings[j].net_load_kwh[i];
            }
            CHECK(std::abs(sum) <= 1e-9);
            CHECK(obj <= idle_obj + 1e-9);
        }
    }
    SUBCASE("single building passes the plan through") {
        const std::vector<BuildingDayInput> one{buildings[0]};
        const std::vector<double> plan{3.0, -1.0, 2.0, 0.5};
        const auto alloc = allocate_day(plan, one, 0.16, 1.0, AllocationPolicy::Strict);
        for (std::size_t i = 0; i < plan.size(); ++i)
            CHECK(alloc.building_rates_kw[0][i] == doctest::Approx(plan[i]).epsilon(1e-9));
    }
    SUBCASE("hourly infeasibility names the hour in strict mode") {
        // draining 6+6 kW per hour empties building A (phi 0) fast; by hour 2
        // only B can discharge
        const std::vector<double> plan{-12.0, -12.0, -12.0, -12.0};
        CHECK_THROWS_WITH_AS(allocate_day(plan, buildings, 0.16, 1.0, AllocationPolicy::Strict),
                             doctest::Contains("hour 2"), InfeasibleError);
    }
    SUBCASE("clamp mode pulls the target into range and reports it") {
        const std::vector<double> plan{-12.0, -12.0, -12.0, -12.0};
        const auto alloc = allocate_day(plan, buildings, 0.16, 1.0,
                                        AllocationPolicy::ClampToFeasible);
        CHECK(alloc.total_clamped_kwh > 0.0);
        for (std::size_t i = 0; i < plan.size(); ++i) {
            double sum = 0.0;
            for (const auto& rates : alloc.building_rates_kw) sum += rates[i];
            CHECK(std::abs(sum - alloc.committed_target_kw[i]) <= 1e-6);
        }
    }
}

TEST_CASE("allocate_day tracks the hourly grid oracle on an asymmetric toy") {
    std::vector<BuildingDayInput> buildings(3);
    buildings[0] = {"A", {2.0, -1.0, 4.0, 0.5}, 0.0, {8.0, 4.0}};
    buildings[1] = {"B", {1.0, 3.0, -2.0, 1.5}, 5.0, {20.0, 6.0}};
    buildings[2] = {"C", {0.0, 1.0, 1.0, -3.0}, 2.0, {12.0, 5.0}};
    const std::vector<double> plan{6.0, -2.0, 3.0, -1.0};

    const auto alloc = allocate_day(plan, buildings, 0.16, 1.0, AllocationPolicy::Strict);

    std::vector<double> stored{0.0, 5.0, 2.0};
    for (std::size_t i = 0; i < plan.size(); ++i) {
        HourAllocationProblem p;
        p.target_rate_kw = plan[i];
        for (std::size_t j = 0; j < 3; ++j)
            p.buildings.push_back(state(buildings[j].net_load_kwh[i], stored[j],
                                        buildings[j].battery.capacity_kwh,
                                        buildings[j].battery.max_rate_kw));
        std::vector<double> hour_rates;
        for (std::size_t j = 0; j < 3; ++j) hour_rates.push_back(alloc.building_rates_kw[j][i]);
        const double grid = grid_search_optimum(p, 0.05);
        CHECK(objective(p, hour_rates) <= grid + 1e-9);
        for (std::size_t j = 0; j < 3; ++j) stored[j] += hour_rates[j];
    }
}

TEST_CASE("buildings with identical state get identical rates") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        HourAllocationProblem p;
        const double net = rng.uniform(-4.0, 4.0);
        const double stored = rng.uniform(2.0, 18.0);
        p.buildings = {state(net, stored), state(net, stored), state(rng.uniform(-4, 4), 10.0)};
        p.target_rate_kw = rng.uniform(-6.0, 6.0);
        const auto rates = allocate_hour(p);
        CHECK(std::abs(rates[0] - rates[1]) <= 1e-6);
    }
}
