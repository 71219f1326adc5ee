#pragma once

#include <span>
#include <string>
#include <vector>

namespace cluster_dispatch {

// Tolerance on every stored-energy bound, so accumulated floating-point
// error can never flip a feasible schedule into an infeasible one.
inline constexpr double kSocToleranceKwh = 1e-9;

struct BatterySpec {
    double capacity_kwh = 0.0;
    double max_rate_kw = 0.0; // symmetric charge/discharge bound

    void validate() const;
};

// One vehicle's contiguous stay at a charging port. Hours are absolute slot
// indices on the simulation timeline, so a session may span the boundary
// between consecutive optimization windows.
struct EVSession {
    std::string id;
    long arrival_hour = 0;    // first parked hour
    long duration_hours = 0;  // parked [arrival, arrival + duration)
    double capacity_kwh = 0.0;
    double max_rate_kw = 0.0;
    double arrival_soc = 0.0; // fraction of capacity
    double target_soc = 1.0;  // required at departure
    bool allow_v2b = false;   // relax the rate floor from 0 to -max_rate

    long departure_hour() const { return arrival_hour + duration_hours; }
    double arrival_energy_kwh() const { return arrival_soc * capacity_kwh; }
    double required_energy_kwh() const { return target_soc * capacity_kwh; }
    double rate_floor_kw() const { return allow_v2b ? -max_rate_kw : 0.0; }

    // Field ranges plus window feasibility:
    // (target - arrival SOC) * capacity must fit in max_rate * duration * tau.
    void validate(double tau_hours = 1.0) const;
};

// phi_i = phi_0 + sum_{m<=i} u_m * tau. Throws InfeasibleError naming the
// first hour (1-based) whose rate or stored-energy bound is broken.
std::vector<double> apply_battery_schedule(const BatterySpec& spec, double initial_kwh,
                                           std::span<const double> rates_kw, double tau_hours);

enum class EvViolationKind { RateBound, SocBound, DepartureShortfall };

struct EvViolation {
    EvViolationKind kind;
    long hour;     // 1-based offset into the parking window; -1 for departure
    double amount; // kW beyond the bound, kWh outside the SOC box, or kWh short
};

struct EvCheckResult {
    std::vector<EvViolation> violations;
    bool valid() const { return violations.empty(); }
    // Sum of all violation magnitudes in kWh-equivalents (rates scaled by tau).
    double total_kwh(double tau_hours) const;
    std::string describe(const EVSession& s) const;
};

// Validates charging rates defined over the full parking window: box bounds
// each hour, running stored energy within [0, capacity], and the departure
// target. Violations are the return value, never thrown.
EvCheckResult check_ev_schedule(const EVSession& s, std::span<const double> rates_kw,
                                double tau_hours);

// Max-rate charging from arrival until the target is met, fractional final
// hour, zeros afterwards. Throws InfeasibleError on an infeasible session.
std::vector<double> immediate_charge_schedule(const EVSession& s, double tau_hours);

// Projects a rate sequence onto hard feasibility hour by hour: each rate is
// clamped into the tighter of the power bound and what the stored-energy
// trajectory admits. The result always passes apply_battery_schedule.
void clamp_rates_to_soc(std::vector<double>& rates_kw, double initial_kwh, double capacity_kwh,
                        double max_rate_kw, double tau_hours);

} // namespace cluster_dispatch
