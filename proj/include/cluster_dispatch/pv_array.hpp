#pragma once

#include "cluster_dispatch/time_series.hpp"

namespace cluster_dispatch {

struct PVSpec {
    double cover_transmittance = 0.9; // [0, 1]
    double incidence_modifier = 1.0;  // [0, 1]
    double efficiency = 0.15;         // (0, 1]
    double area_m2 = 0.0;             // > 0

    void validate() const;
};

// Irradiance on the collector plane (W/m2) to array output (kW). Linear in
// irradiance and area; identically zero when any factor is zero.
double pv_power_kw(const PVSpec& spec, double irradiance_w_per_m2);

// Elementwise pv_power over a W/m2 series. The result carries the kWh-per-
// slot tag (equal numbers at 1 h slots).
TimeSeries generation_series(const PVSpec& spec, const TimeSeries& irradiance);

} // namespace cluster_dispatch
