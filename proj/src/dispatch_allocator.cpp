#include "cluster_dispatch/dispatch_allocator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/time_series.hpp"

namespace cluster_dispatch {

RateInterval feasible_interval(const BuildingHourState& b, double tau_hours) {
    return {std::max(-b.max_rate_kw, -b.stored_kwh / tau_hours),
            std::min(b.max_rate_kw, (b.capacity_kwh - b.stored_kwh) / tau_hours)};
}

namespace {

double equality_tol(double target) {
    return kAllocationResidualTol * std::max(1.0, std::abs(target));
}

// Splits the target across intervals in proportion to their width. Used when
// the quadratic objective is flat (price == 0) so the result is still
// deterministic and feasible.
std::vector<double> proportional_split(double target, const std::vector<RateInterval>& box) {
    double lo_sum = 0.0, width_sum = 0.0;
    for (const auto& iv : box) {
        lo_sum += iv.lo;
        width_sum += iv.hi - iv.lo;
    }
    std::vector<double> rates(box.size());
    const double theta = width_sum > 0.0 ? (target - lo_sum) / width_sum : 0.0;
    for (std::size_t j = 0; j < box.size(); ++j)
        rates[j] = box[j].lo + std::clamp(theta, 0.0, 1.0) * (box[j].hi - box[j].lo);
    return rates;
}

} // namespace

std::vector<double> allocate_hour(const HourAllocationProblem& p) {
    const std::size_t n = p.buildings.size();
    if (n == 0)
        throw ConfigError("allocate_hour needs at least one building");
    const double tau = p.tau_hours;
    const double target = p.target_rate_kw;

    std::vector<RateInterval> box(n);
    double lo_sum = 0.0, hi_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        box[j] = feasible_interval(p.buildings[j], tau);
        // intervals can be degenerate but never inverted beyond tolerance
        if (box[j].lo > box[j].hi) {
            if (box[j].lo - box[j].hi > kSocToleranceKwh)
                throw InfeasibleError("building " + std::to_string(j) +
                                      " has an inverted feasible interval");
            box[j].lo = box[j].hi = 0.5 * (box[j].lo + box[j].hi);
        }
        lo_sum += box[j].lo;
        hi_sum += box[j].hi;
    }
    const double tol = equality_tol(target);
    if (target < lo_sum - tol || target > hi_sum + tol) {
        const double slack = target < lo_sum ? lo_sum - target : target - hi_sum;
        throw InfeasibleError("hour allocation infeasible: target " + format_double(target) +
                              " kW outside [" + format_double(lo_sum) + ", " +
                              format_double(hi_sum) + "], slack " + format_double(slack) + " kW");
    }
    const double reachable = std::clamp(target, lo_sum, hi_sum);

    if (p.price == 0.0)
        return proportional_split(reachable, box);

    // Water level nu equalizes post-battery net loads: u_j = clamp(nu - L_j).
    // sum_j u_j is a nondecreasing piecewise-linear function of nu with
    // breakpoints where a building enters or leaves its bounds.
    std::vector<double> level(n); // net load expressed in rate units
    for (std::size_t j = 0; j < n; ++j)
        level[j] = p.buildings[j].net_load_kwh / tau;

    std::vector<double> breaks;
    breaks.reserve(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        breaks.push_back(level[j] + box[j].lo);
        breaks.push_back(level[j] + box[j].hi);
    }
    std::sort(breaks.begin(), breaks.end());

    auto rate_sum = [&](double nu) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += std::clamp(nu - level[j], box[j].lo, box[j].hi);
        return s;
    };

    double nu;
    if (reachable <= rate_sum(breaks.front())) {
        nu = breaks.front();
    } else if (reachable >= rate_sum(breaks.back())) {
        nu = breaks.back();
    } else {
        std::size_t k = 0;
        while (k + 1 < breaks.size() && rate_sum(breaks[k + 1]) < reachable) ++k;
        const double s_k = rate_sum(breaks[k]);
        double slope = 0.0;
        const double mid = 0.5 * (breaks[k] + breaks[k + 1]);
        for (std::size_t j = 0; j < n; ++j)
            if (mid - level[j] > box[j].lo && mid - level[j] < box[j].hi) slope += 1.0;
        nu = slope > 0.0 ? breaks[k] + (reachable - s_k) / slope : breaks[k];
    }

    std::vector<double> rates(n);
    for (std::size_t j = 0; j < n; ++j)
        rates[j] = std::clamp(nu - level[j], box[j].lo, box[j].hi);

    // distribute the floating-point residual over the unclamped buildings
    double residual = reachable - std::accumulate(rates.begin(), rates.end(), 0.0);
    if (residual != 0.0) {
        for (std::size_t j = 0; j < n && std::abs(residual) > 0.0; ++j) {
            const double lo_room = rates[j] - box[j].lo;
            const double hi_room = box[j].hi - rates[j];
            const double adj = std::clamp(residual, -lo_room, hi_room);
            rates[j] += adj;
            residual -= adj;
        }
    }
    return rates;
}

DayAllocation allocate_day(std::span<const double> rep_rates_kw,
                           const std::vector<BuildingDayInput>& buildings, double price,
                           double tau_hours, AllocationPolicy policy) {
    if (buildings.empty())
        throw ConfigError("allocate_day needs at least one building");
    const std::size_t hours = rep_rates_kw.size();
    for (const auto& b : buildings)
        if (b.net_load_kwh.size() != hours)
            throw ConfigError("building '" + b.id + "' net load covers " +
                              std::to_string(b.net_load_kwh.size()) + " hours, expected " +
                              std::to_string(hours));

    DayAllocation out;
    out.building_rates_kw.assign(buildings.size(), std::vector<double>(hours, 0.0));
    out.committed_target_kw.assign(hours, 0.0);

    std::vector<double> stored(buildings.size());
    for (std::size_t j = 0; j < buildings.size(); ++j)
        stored[j] = buildings[j].initial_stored_kwh;

    for (std::size_t i = 0; i < hours; ++i) {
        HourAllocationProblem problem;
        problem.price = price;
        problem.tau_hours = tau_hours;
        problem.buildings.resize(buildings.size());
        double lo_sum = 0.0, hi_sum = 0.0;
        for (std::size_t j = 0; j < buildings.size(); ++j) {
            auto& s = problem.buildings[j];
            s.net_load_kwh = buildings[j].net_load_kwh[i];
            s.stored_kwh = stored[j];
            s.capacity_kwh = buildings[j].battery.capacity_kwh;
            s.max_rate_kw = buildings[j].battery.max_rate_kw;
            const auto iv = feasible_interval(s, tau_hours);
            lo_sum += iv.lo;
            hi_sum += iv.hi;
        }
        double target = rep_rates_kw[i];
        if (policy == AllocationPolicy::ClampToFeasible) {
            const double clamped = std::clamp(target, lo_sum, hi_sum);
            out.total_clamped_kwh += std::abs(clamped - target) * tau_hours;
            target = clamped;
        }
        problem.target_rate_kw = target;
        std::vector<double> rates;
        try {
            rates = allocate_hour(problem);
        } catch (const InfeasibleError& e) {
            throw InfeasibleError("hour " + std::to_string(i + 1) + ": " + e.what());
        }
        out.committed_target_kw[i] = target;
        for (std::size_t j = 0; j < buildings.size(); ++j) {
            out.building_rates_kw[j][i] = rates[j];
            stored[j] += rates[j] * tau_hours;
            // guard against drift beyond the box
            stored[j] = std::clamp(stored[j], 0.0, buildings[j].battery.capacity_kwh);
        }
    }
    return out;
}

} // namespace cluster_dispatch
