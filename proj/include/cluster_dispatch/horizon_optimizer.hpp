#pragma once

#include <vector>

#include "cluster_dispatch/cluster_aggregate.hpp"
#include "cluster_dispatch/genetic.hpp"
#include "cluster_dispatch/pricing.hpp"
#include "cluster_dispatch/storage_model.hpp"

namespace cluster_dispatch {

// One EV session's intersection with the current optimization window. A
// session may begin before the window (energy already delivered is carried
// in committed_kwh) or end after it (rates beyond the window are committed
// by a later optimization; tail_capacity_kwh is what that later window can
// still deliver at most, which bounds how little this window may charge
// without stranding the departure target).
struct EvHorizonSlot {
    EVSession session;
    int first_hour = 0;             // horizon-relative index of the first optimizable hour
    int hours = 0;                  // optimizable hour count
    double committed_kwh = 0.0;     // delivered before this window
    double tail_capacity_kwh = 0.0; // max deliverable after this window
    bool departs_in_horizon = true;

    double stored_at_window_start_kwh() const {
        return session.arrival_energy_kwh() + committed_kwh;
    }
    // Energy this window must deliver so the departure target stays reachable.
    double minimum_delivery_kwh() const {
        const double need =
            session.required_energy_kwh() - stored_at_window_start_kwh() - tail_capacity_kwh;
        return need > 0.0 ? need : 0.0;
    }
};

// Clips a session (absolute hours) to the window [window_begin, window_begin
// + horizon_hours). Returns a slot with hours == 0 when they do not overlap.
EvHorizonSlot make_horizon_slot(const EVSession& session, long window_begin_hour,
                                int horizon_hours, double committed_kwh, double tau_hours);

// The decision vector of one optimization window: battery rates for every
// horizon hour plus each EV's rates over its optimizable hours.
struct HorizonPlan {
    std::vector<double> battery_rates_kw;
    std::vector<std::vector<double>> ev_rates_kw; // aligned with the slot list
};

// Grid exchange of the representative building at one hour: demand + EV
// charging + battery action - generation, in kWh. Positive means import.
double net_exchange(const RepresentativeBuilding& rep, const HorizonPlan& plan,
                    const std::vector<EvHorizonSlot>& slots, std::size_t hour,
                    double tau_hours = 1.0);

std::vector<double> net_exchange_series(const RepresentativeBuilding& rep, const HorizonPlan& plan,
                                        const std::vector<EvHorizonSlot>& slots,
                                        double tau_hours = 1.0);

// Buy price on imports, feed-in price on exports, summed over the window.
double daily_cost(const RepresentativeBuilding& rep, const HorizonPlan& plan,
                  const std::vector<EvHorizonSlot>& slots, const PricingScheme& pricing,
                  double tau_hours = 1.0);

// Maps a candidate plan to the cost of its committed realization. The
// dispatch step supplies the per-building allocation (with target clamping)
// here, so the search optimizes what will actually be executed rather than
// an aggregate idealization. Must be a pure, thread-safe function.
using PlanCostFn = std::function<double(const HorizonPlan&)>;

// GA search over the window's battery and EV rates minimizing daily_cost.
// Soft-constraint penalties steer the search; the returned plan is repaired
// to hard feasibility: battery rates pass apply_battery_schedule and every
// slot delivers at least its minimum, with departure targets met for
// sessions ending inside the window. Deterministic for a fixed seed, and
// identical between serial and parallel evaluation. battery_rate_seeds may
// carry warm starts (each paired with immediate EV charging) so a known
// reachable plan is always in the initial population. committed_cost, when
// set, replaces the representative-level cost term of the fitness.
HorizonPlan optimize_horizon(const RepresentativeBuilding& rep,
                             const std::vector<EvHorizonSlot>& slots,
                             const PricingScheme& pricing, const GAParams& params,
                             double tau_hours = 1.0,
                             const std::vector<std::vector<double>>& battery_rate_seeds = {},
                             const PlanCostFn& committed_cost = {});

// Convenience for sessions given in window-relative hours and fully inside
// the window.
HorizonPlan optimize_horizon(const RepresentativeBuilding& rep,
                             const std::vector<EVSession>& sessions,
                             const PricingScheme& pricing, const GAParams& params,
                             double tau_hours = 1.0);

std::vector<EvHorizonSlot> make_horizon_slots(const std::vector<EVSession>& sessions,
                                              int horizon_hours, double tau_hours = 1.0);

} // namespace cluster_dispatch
