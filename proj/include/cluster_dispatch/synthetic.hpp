#pragma once

#include <cstdint>

#include "cluster_dispatch/time_series.hpp"

namespace cluster_dispatch {

// Seeded stand-ins for measured residential traces: a double-hump household
// demand profile and a summer irradiance bell, both with mild day-to-day
// variation. Values are rounded to 3 decimals so the CSV form is exact.
TimeSeries synthetic_demand(int days, double daily_kwh, std::uint64_t seed, EpochHour start);
TimeSeries synthetic_irradiance(int days, std::uint64_t seed, EpochHour start);

} // namespace cluster_dispatch
