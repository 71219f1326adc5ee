#include "cluster_dispatch/pv_array.hpp"

#include "cluster_dispatch/errors.hpp"

namespace cluster_dispatch {

void PVSpec::validate() const {
    if (cover_transmittance < 0.0 || cover_transmittance > 1.0)
        throw ConfigError("PV cover transmittance must be in [0,1], got " +
                          format_double(cover_transmittance));
    if (incidence_modifier < 0.0 || incidence_modifier > 1.0)
        throw ConfigError("PV incidence modifier must be in [0,1], got " +
                          format_double(incidence_modifier));
    if (efficiency <= 0.0 || efficiency > 1.0)
        throw ConfigError("PV efficiency must be in (0,1], got " + format_double(efficiency));
    if (area_m2 <= 0.0)
        throw ConfigError("PV area must be > 0 m2, got " + format_double(area_m2));
}

double pv_power_kw(const PVSpec& spec, double irradiance_w_per_m2) {
    if (irradiance_w_per_m2 < 0.0)
        throw ConfigError("negative irradiance " + format_double(irradiance_w_per_m2));
    // W on the array, divided by 1000 for kW
    return spec.cover_transmittance * spec.incidence_modifier * irradiance_w_per_m2 *
           spec.efficiency * spec.area_m2 / 1000.0;
}

TimeSeries generation_series(const PVSpec& spec, const TimeSeries& irradiance) {
    if (irradiance.unit != Unit::WPerM2)
        throw ConfigError("generation_series expects a W_per_m2 series, got " +
                          unit_name(irradiance.unit));
    TimeSeries out;
    out.start = irradiance.start;
    out.unit = Unit::kWhPerSlot;
    out.values.reserve(irradiance.values.size());
    for (double it : irradiance.values)
        out.values.push_back(pv_power_kw(spec, it));
    return out;
}

} // namespace cluster_dispatch
