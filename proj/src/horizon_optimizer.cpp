#include "cluster_dispatch/horizon_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cluster_dispatch/errors.hpp"

namespace cluster_dispatch {

EvHorizonSlot make_horizon_slot(const EVSession& session, long window_begin_hour,
                                int horizon_hours, double committed_kwh, double tau_hours) {
    const long window_end = window_begin_hour + horizon_hours;
    const long first = std::max(session.arrival_hour, window_begin_hour);
    const long last = std::min(session.departure_hour(), window_end);
    EvHorizonSlot slot;
    slot.session = session;
    slot.committed_kwh = committed_kwh;
    if (last <= first) {
        slot.hours = 0;
        return slot;
    }
    slot.first_hour = static_cast<int>(first - window_begin_hour);
    slot.hours = static_cast<int>(last - first);
    slot.departs_in_horizon = session.departure_hour() <= window_end;
    const long tail_hours = slot.departs_in_horizon ? 0 : session.departure_hour() - window_end;
    slot.tail_capacity_kwh = session.max_rate_kw * tau_hours * static_cast<double>(tail_hours);
    return slot;
}

std::vector<EvHorizonSlot> make_horizon_slots(const std::vector<EVSession>& sessions,
                                              int horizon_hours, double tau_hours) {
    std::vector<EvHorizonSlot> slots;
    slots.reserve(sessions.size());
    for (const auto& s : sessions) {
        auto slot = make_horizon_slot(s, 0, horizon_hours, 0.0, tau_hours);
        if (slot.hours > 0) slots.push_back(slot);
    }
    return slots;
}

double net_exchange(const RepresentativeBuilding& rep, const HorizonPlan& plan,
                    const std::vector<EvHorizonSlot>& slots, std::size_t hour, double tau_hours) {
    double ev_load = 0.0;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto& slot = slots[k];
        const long local = static_cast<long>(hour) - slot.first_hour;
        if (local >= 0 && local < slot.hours)
            ev_load += plan.ev_rates_kw[k][static_cast<std::size_t>(local)] * tau_hours;
    }
    return rep.demand.values[hour] + ev_load + plan.battery_rates_kw[hour] * tau_hours -
           rep.generation.values[hour];
}

std::vector<double> net_exchange_series(const RepresentativeBuilding& rep, const HorizonPlan& plan,
                                        const std::vector<EvHorizonSlot>& slots, double tau_hours) {
    std::vector<double> out(rep.hours());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = net_exchange(rep, plan, slots, i, tau_hours);
    return out;
}

double daily_cost(const RepresentativeBuilding& rep, const HorizonPlan& plan,
                  const std::vector<EvHorizonSlot>& slots, const PricingScheme& pricing,
                  double tau_hours) {
    double cost = 0.0;
    for (std::size_t i = 0; i < rep.hours(); ++i) {
        const double ex = net_exchange(rep, plan, slots, i, tau_hours);
        cost += ex * (ex > 0.0 ? pricing.buy : pricing.sell);
    }
    return cost;
}

namespace {

struct GenomeLayout {
    std::size_t horizon;
    std::vector<std::size_t> ev_offsets; // gene index of each slot's first rate

    static GenomeLayout build(std::size_t horizon, const std::vector<EvHorizonSlot>& slots) {
        GenomeLayout layout{horizon, {}};
        std::size_t next = horizon;
        for (const auto& slot : slots) {
            layout.ev_offsets.push_back(next);
            next += static_cast<std::size_t>(slot.hours);
        }
        return layout;
    }

    std::size_t total(const std::vector<EvHorizonSlot>& slots) const {
        std::size_t n = horizon;
        for (const auto& slot : slots) n += static_cast<std::size_t>(slot.hours);
        return n;
    }
};

HorizonPlan decode(std::span<const double> genome, const GenomeLayout& layout,
                   const std::vector<EvHorizonSlot>& slots) {
    HorizonPlan plan;
    plan.battery_rates_kw.assign(genome.begin(), genome.begin() + layout.horizon);
    plan.ev_rates_kw.resize(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const std::size_t off = layout.ev_offsets[k];
        plan.ev_rates_kw[k].assign(genome.begin() + off,
                                   genome.begin() + off + static_cast<std::size_t>(slots[k].hours));
    }
    return plan;
}

// Total kWh by which the battery trajectory leaves [0, capacity].
double battery_soc_violation_kwh(double initial, double capacity, std::span<const double> rates,
                                 double tau) {
    double phi = initial;
    double violation = 0.0;
    for (double u : rates) {
        phi += u * tau;
        if (phi > capacity)
            violation += phi - capacity;
        else if (phi < 0.0)
            violation += -phi;
    }
    return violation;
}

// SOC-box and delivery-target violations of one slot, in kWh.
double slot_violation_kwh(const EvHorizonSlot& slot, std::span<const double> rates, double tau) {
    double stored = slot.stored_at_window_start_kwh();
    double violation = 0.0;
    for (double u : rates) {
        stored += u * tau;
        if (stored > slot.session.capacity_kwh)
            violation += stored - slot.session.capacity_kwh;
        else if (stored < 0.0)
            violation += -stored;
    }
    const double delivered = stored - slot.stored_at_window_start_kwh();
    const double shortfall = slot.minimum_delivery_kwh() - delivered;
    if (shortfall > 0.0) violation += shortfall;
    return violation;
}

// Clamps one slot's rates into the box and under the capacity ceiling.
void clamp_ev_trajectory(std::vector<double>& rates, const EvHorizonSlot& slot, double tau) {
    double stored = slot.stored_at_window_start_kwh();
    const double floor = slot.session.rate_floor_kw();
    for (auto& u : rates) {
        const double lo = std::max(floor, -stored / tau);
        const double hi = std::min(slot.session.max_rate_kw,
                                   (slot.session.capacity_kwh - stored) / tau);
        u = std::clamp(u, lo, hi);
        stored += u * tau;
    }
}

// Raises the slot's rates until the minimum delivery is met, cheapest hours
// first: hours where the building is exporting cost the feed-in price at
// the margin, import hours the purchase price. Ties break on the hour index.
void repair_slot_delivery(HorizonPlan& plan, std::size_t slot_index,
                          const RepresentativeBuilding& rep,
                          const std::vector<EvHorizonSlot>& slots, const PricingScheme& pricing,
                          double tau) {
    const auto& slot = slots[slot_index];
    auto& rates = plan.ev_rates_kw[slot_index];
    const double target = slot.minimum_delivery_kwh();

    const int guard_limit = slot.hours * slot.hours * 4 + 16;
    for (int guard = 0; guard < guard_limit; ++guard) {
        double delivered = 0.0;
        for (double u : rates) delivered += u * tau;
        double shortfall = target - delivered;
        if (shortfall <= kSocToleranceKwh) return;

        // room to push energy through hour h without topping the battery out
        // anywhere later in the window
        std::vector<double> stored(rates.size() + 1);
        stored[0] = slot.stored_at_window_start_kwh();
        for (std::size_t i = 0; i < rates.size(); ++i)
            stored[i + 1] = stored[i] + rates[i] * tau;
        std::vector<double> room(rates.size());
        double min_ahead = std::numeric_limits<double>::infinity();
        for (std::size_t i = rates.size(); i-- > 0;) {
            min_ahead = std::min(min_ahead, slot.session.capacity_kwh - stored[i + 1]);
            room[i] = min_ahead;
        }

        std::size_t pick = rates.size();
        double pick_price = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < rates.size(); ++i) {
            if (rates[i] >= slot.session.max_rate_kw - 1e-12 || room[i] <= kSocToleranceKwh)
                continue;
            const std::size_t hour = static_cast<std::size_t>(slot.first_hour) + i;
            const double ex = net_exchange(rep, plan, slots, hour, tau);
            const double marginal = ex > 0.0 ? pricing.buy : pricing.sell;
            if (marginal < pick_price) {
                pick_price = marginal;
                pick = i;
            }
        }
        if (pick == rates.size())
            throw InfeasibleError("EV '" + slot.session.id +
                                  "': cannot reach the departure target inside the window");
        const double raise = std::min({slot.session.max_rate_kw - rates[pick],
                                       shortfall / tau, room[pick] / tau});
        rates[pick] += raise;
    }
    throw InfeasibleError("EV '" + slot.session.id + "': delivery repair did not converge");
}

} // namespace

HorizonPlan optimize_horizon(const RepresentativeBuilding& rep,
                             const std::vector<EvHorizonSlot>& slots,
                             const PricingScheme& pricing, const GAParams& params,
                             double tau_hours,
                             const std::vector<std::vector<double>>& battery_rate_seeds,
                             const PlanCostFn& committed_cost) {
    const std::size_t horizon = rep.hours();
    for (const auto& slot : slots) {
        slot.session.validate(tau_hours);
        const double deliverable =
            slot.session.max_rate_kw * tau_hours * static_cast<double>(slot.hours);
        if (slot.minimum_delivery_kwh() > deliverable + kSocToleranceKwh)
            throw InfeasibleError("EV '" + slot.session.id + "': must deliver " +
                                  format_double(slot.minimum_delivery_kwh()) +
                                  " kWh this window but only " + format_double(deliverable) +
                                  " kWh fit");
    }

    const GenomeLayout layout = GenomeLayout::build(horizon, slots);
    std::vector<GeneBox> boxes(layout.total(slots));
    for (std::size_t i = 0; i < horizon; ++i)
        boxes[i] = {-rep.max_rate_kw, rep.max_rate_kw};
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto& s = slots[k].session;
        for (int h = 0; h < slots[k].hours; ++h)
            boxes[layout.ev_offsets[k] + static_cast<std::size_t>(h)] = {s.rate_floor_kw(),
                                                                         s.max_rate_kw};
    }

    const double penalty =
        params.penalty_weight < 0.0 ? 10.0 * pricing.buy : params.penalty_weight;

    // With a committed-cost hook the raw battery genes are priced through
    // their clamped realization, so only the EV-side violations need a
    // penalty; otherwise the aggregate SOC bound is enforced softly here.
    auto fitness = [&](std::span<const double> genome) -> double {
        const HorizonPlan plan = decode(genome, layout, slots);
        double violation = 0.0;
        for (std::size_t k = 0; k < slots.size(); ++k)
            violation += slot_violation_kwh(slots[k], plan.ev_rates_kw[k], tau_hours);
        double cost;
        if (committed_cost) {
            cost = committed_cost(plan);
        } else {
            violation += battery_soc_violation_kwh(rep.stored_kwh, rep.capacity_kwh,
                                                   plan.battery_rates_kw, tau_hours);
            cost = daily_cost(rep, plan, slots, pricing, tau_hours);
        }
        return cost + penalty * violation;
    };

    // Seeds: idle battery with (a) just-in-time minimum EV delivery and
    // (b) full immediate charging, the all-zero plan, and any caller-
    // provided battery warm starts paired with immediate charging.
    std::vector<std::vector<double>> seeds;
    {
        std::vector<double> asap(boxes.size(), 0.0);
        std::vector<double> full(boxes.size(), 0.0);
        for (std::size_t k = 0; k < slots.size(); ++k) {
            const auto& slot = slots[k];
            double need_min = slot.minimum_delivery_kwh();
            double need_full = std::max(
                0.0, slot.session.required_energy_kwh() - slot.stored_at_window_start_kwh());
            for (int h = 0; h < slot.hours; ++h) {
                const std::size_t g = layout.ev_offsets[k] + static_cast<std::size_t>(h);
                const double step = slot.session.max_rate_kw * tau_hours;
                asap[g] = std::min(need_min, step) / tau_hours;
                full[g] = std::min(need_full, step) / tau_hours;
                need_min = std::max(0.0, need_min - step);
                need_full = std::max(0.0, need_full - step);
            }
        }
        for (const auto& battery : battery_rate_seeds) {
            std::vector<double> warm = full;
            for (std::size_t i = 0; i < horizon && i < battery.size(); ++i)
                warm[i] = battery[i];
            seeds.push_back(std::move(warm));
        }
        seeds.push_back(full);
        seeds.push_back(asap);
        seeds.emplace_back(boxes.size(), 0.0);
    }

    const GAResult ga = run_ga(boxes, fitness, params, seeds);
    HorizonPlan plan = decode(ga.best, layout, slots);

    // Hard-feasibility repair of the winner.
    clamp_rates_to_soc(plan.battery_rates_kw, rep.stored_kwh, rep.capacity_kwh, rep.max_rate_kw,
                       tau_hours);
    for (std::size_t k = 0; k < slots.size(); ++k)
        clamp_ev_trajectory(plan.ev_rates_kw[k], slots[k], tau_hours);
    for (std::size_t k = 0; k < slots.size(); ++k)
        repair_slot_delivery(plan, k, rep, slots, pricing, tau_hours);

    return plan;
}

HorizonPlan optimize_horizon(const RepresentativeBuilding& rep,
                             const std::vector<EVSession>& sessions,
                             const PricingScheme& pricing, const GAParams& params,
                             double tau_hours) {
    return optimize_horizon(rep, make_horizon_slots(sessions, static_cast<int>(rep.hours()), tau_hours),
                            pricing, params, tau_hours);
}

} // namespace cluster_dispatch
