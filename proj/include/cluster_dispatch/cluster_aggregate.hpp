#pragma once

#include <string>
#include <vector>

#include "cluster_dispatch/pv_array.hpp"
#include "cluster_dispatch/storage_model.hpp"
#include "cluster_dispatch/time_series.hpp"

namespace cluster_dispatch {

struct BuildingModel {
    std::string id;
    TimeSeries demand;       // kWh per slot
    TimeSeries generation;   // kWh per slot
    BatterySpec battery;
    double stored_kwh = 0.0; // battery state at the start of the horizon
    PVSpec pv;
};

// The "virtual" building standing in for the whole cluster: demand,
// generation, capacity, rate bound and initial store are sums over members.
// The rate bound is carried along even though only the capacity is needed
// for the aggregate SOC constraint: without it the per-hour target handed
// to the allocation step could exceed what any combination of buildings can
// absorb.
struct RepresentativeBuilding {
    TimeSeries demand;
    TimeSeries generation;
    double capacity_kwh = 0.0;
    double max_rate_kw = 0.0;
    double stored_kwh = 0.0;

    std::size_t hours() const { return demand.size(); }
};

RepresentativeBuilding aggregate(const std::vector<BuildingModel>& buildings);

} // namespace cluster_dispatch
