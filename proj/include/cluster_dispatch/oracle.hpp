#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cluster_dispatch/genetic.hpp"
#include "cluster_dispatch/pricing.hpp"
#include "cluster_dispatch/storage_model.hpp"

namespace cluster_dispatch {

// Refuse instances whose grid has more combinations than this.
inline constexpr std::uint64_t kOracleSearchLimit = 100'000'000ull;

struct OracleBuilding {
    std::string id;
    std::vector<double> demand_kwh;
    std::vector<double> generation_kwh;
    BatterySpec battery;
    double initial_stored_kwh = 0.0;
    std::vector<double> battery_levels_kw; // signed levels, |level| <= max_rate
};

struct OracleEv {
    EVSession session; // arrival_hour relative to the instance horizon
    std::size_t building = 0;
    std::vector<double> rate_levels_kw; // levels within [rate floor, max_rate]
};

// A desk-scale instance small enough to enumerate exactly.
struct OracleInstance {
    int horizon = 0; // <= 8
    std::vector<OracleBuilding> buildings;
    std::vector<OracleEv> evs;
    PricingScheme pricing;
    double tau_hours = 1.0;

    void validate() const;
};

enum class ScenarioKind { S1, S2, S3 };

ScenarioKind scenario_kind_from_name(const std::string& name);
std::string scenario_name(ScenarioKind k);

struct OraclePlan {
    std::vector<std::vector<double>> battery_rates_kw; // [building][hour]
    std::vector<std::vector<double>> ev_rates_kw;      // [ev][parked hour]
    double cost = 0.0;
    bool feasible = false;
    std::uint64_t combinations = 0; // candidates visited (after pruning)
};

// Exact enumeration over the rate grid under the scenario's semantics:
// S1 fixes EVs to immediate charging and optimizes each building alone with
// no sharing; S2 fixes EVs and optimizes all batteries jointly under full
// sharing; S3 frees the EV rates as well. Infeasible combinations are
// filtered by the storage constraints; among cost ties the plan whose
// level-index vector is lexicographically smallest wins, so results are
// stable and identical between serial and parallel enumeration.
OraclePlan brute_force_optimal(const OracleInstance& instance, ScenarioKind semantics,
                               EvalMode mode = EvalMode::Parallel);

// Cost of a fixed set of rates under the same settlement semantics the
// enumeration uses (sharing for S2/S3, per-building for S1).
double oracle_plan_cost(const OracleInstance& instance, ScenarioKind semantics,
                        const std::vector<std::vector<double>>& battery_rates_kw,
                        const std::vector<std::vector<double>>& ev_rates_kw);

} // namespace cluster_dispatch
