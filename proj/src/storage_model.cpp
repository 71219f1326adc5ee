#include "cluster_dispatch/storage_model.hpp"

#include <cmath>

#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/time_series.hpp"

namespace cluster_dispatch {

void BatterySpec::validate() const {
    if (capacity_kwh <= 0.0)
        throw ConfigError("battery capacity must be > 0 kWh, got " + format_double(capacity_kwh));
    if (max_rate_kw <= 0.0)
        throw ConfigError("battery max rate must be > 0 kW, got " + format_double(max_rate_kw));
}

void EVSession::validate(double tau_hours) const {
    if (capacity_kwh <= 0.0)
        throw ConfigError("EV '" + id + "': capacity must be > 0 kWh");
    if (max_rate_kw <= 0.0)
        throw ConfigError("EV '" + id + "': max charging rate must be > 0 kW");
    if (duration_hours < 1)
        throw ConfigError("EV '" + id + "': parking duration must be >= 1 hour");
    if (arrival_soc < 0.0 || arrival_soc > 1.0 || target_soc < 0.0 || target_soc > 1.0)
        throw ConfigError("EV '" + id + "': SOC values must be fractions in [0,1]");
    if (arrival_soc > target_soc)
        throw ConfigError("EV '" + id + "': arrival SOC " + format_double(arrival_soc) +
                          " exceeds target SOC " + format_double(target_soc));
    const double needed = (target_soc - arrival_soc) * capacity_kwh;
    const double deliverable = max_rate_kw * tau_hours * static_cast<double>(duration_hours);
    if (needed > deliverable + kSocToleranceKwh)
        throw InfeasibleError("EV '" + id + "': needs " + format_double(needed) +
                              " kWh but at most " + format_double(deliverable) +
                              " kWh fit in the parking window");
}

std::vector<double> apply_battery_schedule(const BatterySpec& spec, double initial_kwh,
                                           std::span<const double> rates_kw, double tau_hours) {
    if (initial_kwh < -kSocToleranceKwh || initial_kwh > spec.capacity_kwh + kSocToleranceKwh)
        throw InfeasibleError("initial stored energy " + format_double(initial_kwh) +
                              " kWh outside [0, " + format_double(spec.capacity_kwh) + "]");
    std::vector<double> stored;
    stored.reserve(rates_kw.size());
    double phi = initial_kwh;
    for (std::size_t i = 0; i < rates_kw.size(); ++i) {
        const double u = rates_kw[i];
        if (std::abs(u) > spec.max_rate_kw + kSocToleranceKwh)
            throw InfeasibleError("battery rate " + format_double(u) + " kW at hour " +
                                  std::to_string(i + 1) + " exceeds the " +
                                  format_double(spec.max_rate_kw) + " kW bound");
        phi += u * tau_hours;
        if (phi > spec.capacity_kwh + kSocToleranceKwh)
            throw InfeasibleError("stored energy would reach " + format_double(phi) +
                                  " kWh at hour " + std::to_string(i + 1) + ", " +
                                  format_double(phi - spec.capacity_kwh) + " kWh over capacity");
        if (phi < -kSocToleranceKwh)
            throw InfeasibleError("stored energy would reach " + format_double(phi) +
                                  " kWh at hour " + std::to_string(i + 1) + ", " +
                                  format_double(-phi) + " kWh below empty");
        stored.push_back(phi);
    }
    return stored;
}

double EvCheckResult::total_kwh(double tau_hours) const {
    double total = 0.0;
    for (const auto& v : violations)
        total += v.kind == EvViolationKind::RateBound ? v.amount * tau_hours : v.amount;
    return total;
}

std::string EvCheckResult::describe(const EVSession& s) const {
    if (violations.empty()) return "EV '" + s.id + "': schedule valid";
    std::string out = "EV '" + s.id + "':";
    for (const auto& v : violations) {
        switch (v.kind) {
            case EvViolationKind::RateBound:
                out += " rate bound broken by " + format_double(v.amount) + " kW at window hour " +
                       std::to_string(v.hour) + ";";
                break;
            case EvViolationKind::SocBound:
                out += " stored energy outside [0, capacity] by " + format_double(v.amount) +
                       " kWh at window hour " + std::to_string(v.hour) + ";";
                break;
            case EvViolationKind::DepartureShortfall:
                out += " departs " + format_double(v.amount) + " kWh short of the target;";
                break;
        }
    }
    out.pop_back();
    return out;
}

EvCheckResult check_ev_schedule(const EVSession& s, std::span<const double> rates_kw,
                                double tau_hours) {
    EvCheckResult result;
    const double floor = s.rate_floor_kw();
    double stored = s.arrival_energy_kwh();
    for (std::size_t i = 0; i < rates_kw.size(); ++i) {
        const double u = rates_kw[i];
        const long hour = static_cast<long>(i) + 1;
        if (u > s.max_rate_kw + kSocToleranceKwh)
            result.violations.push_back({EvViolationKind::RateBound, hour, u - s.max_rate_kw});
        else if (u < floor - kSocToleranceKwh)
            result.violations.push_back({EvViolationKind::RateBound, hour, floor - u});
        stored += u * tau_hours;
        if (stored > s.capacity_kwh + kSocToleranceKwh)
            result.violations.push_back({EvViolationKind::SocBound, hour, stored - s.capacity_kwh});
        else if (stored < -kSocToleranceKwh)
            result.violations.push_back({EvViolationKind::SocBound, hour, -stored});
    }
    const double shortfall = s.required_energy_kwh() - stored;
    if (shortfall > kSocToleranceKwh)
        result.violations.push_back({EvViolationKind::DepartureShortfall, -1, shortfall});
    return result;
}

std::vector<double> immediate_charge_schedule(const EVSession& s, double tau_hours) {
    s.validate(tau_hours);
    std::vector<double> rates(static_cast<std::size_t>(s.duration_hours), 0.0);
    double remaining = (s.target_soc - s.arrival_soc) * s.capacity_kwh;
    for (auto& r : rates) {
        if (remaining <= kSocToleranceKwh) break;
        const double delivered = std::min(remaining, s.max_rate_kw * tau_hours);
        r = delivered / tau_hours;
        remaining -= delivered;
    }
    return rates;
}

void clamp_rates_to_soc(std::vector<double>& rates_kw, double initial_kwh, double capacity_kwh,
                        double max_rate_kw, double tau_hours) {
    double phi = std::clamp(initial_kwh, 0.0, capacity_kwh);
    for (auto& u : rates_kw) {
        const double lo = std::max(-max_rate_kw, -phi / tau_hours);
        const double hi = std::min(max_rate_kw, (capacity_kwh - phi) / tau_hours);
        u = std::clamp(u, lo, hi);
        phi += u * tau_hours;
    }
}

} // namespace cluster_dispatch
