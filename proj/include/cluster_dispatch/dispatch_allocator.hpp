#pragma once

#include <span>
#include <string>
#include <vector>

#include "cluster_dispatch/storage_model.hpp"

namespace cluster_dispatch {

// Relative tolerance on the equality constraint sum(u_j) == target.
inline constexpr double kAllocationResidualTol = 1e-6;

struct BuildingHourState {
    double net_load_kwh = 0.0; // demand + EV - PV, before battery action
    double stored_kwh = 0.0;   // battery level at the start of the hour
    double capacity_kwh = 0.0;
    double max_rate_kw = 0.0;
};

struct HourAllocationProblem {
    double target_rate_kw = 0.0; // the representative building's rate this hour
    std::vector<BuildingHourState> buildings;
    double price = 0.16; // common hourly price, >= 0
    double tau_hours = 1.0;
};

struct RateInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// Box the building's rate must stay in this hour: the tighter of the power
// bound and what the stored-energy headroom admits.
RateInterval feasible_interval(const BuildingHourState& b, double tau_hours);

// Minimizes sum_j ((net_load_j + u_j * tau) * price)^2 subject to
// sum_j u_j == target and the per-building intervals. The optimum equalizes
// post-battery net loads across buildings up to interval clamping, found
// exactly by a breakpoint sweep over the water level. With price == 0 every
// allocation is optimal; ties break by splitting the target across buildings
// in proportion to interval width. Throws InfeasibleError carrying the
// aggregate slack when the intervals cannot absorb the target.
std::vector<double> allocate_hour(const HourAllocationProblem& p);

struct BuildingDayInput {
    std::string id;
    std::vector<double> net_load_kwh; // one entry per hour
    double initial_stored_kwh = 0.0;
    BatterySpec battery;
};

enum class AllocationPolicy {
    Strict,         // propagate hourly infeasibility
    ClampToFeasible // pull the hourly target into the aggregate interval first
};

struct DayAllocation {
    std::vector<std::vector<double>> building_rates_kw; // [building][hour]
    std::vector<double> committed_target_kw;            // target after any clamping
    double total_clamped_kwh = 0.0;                     // 0 in strict mode
};

// Runs allocate_hour for each hour in sequence, chaining every building's
// stored energy between hours. Hours are inherently sequential; callers may
// parallelize across days or scenarios instead.
DayAllocation allocate_day(std::span<const double> rep_rates_kw,
                           const std::vector<BuildingDayInput>& buildings, double price,
                           double tau_hours, AllocationPolicy policy);

} // namespace cluster_dispatch
