#include "cluster_dispatch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/settlement.hpp"
#include "cluster_dispatch/time_series.hpp"

namespace cluster_dispatch {

ScenarioKind scenario_kind_from_name(const std::string& name) {
    if (name == "S1") return ScenarioKind::S1;
    if (name == "S2") return ScenarioKind::S2;
    if (name == "S3") return ScenarioKind::S3;
    throw ConfigError("unknown scenario '" + name + "' (expected S1, S2 or S3)");
}

std::string scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::S1: return "S1";
        case ScenarioKind::S2: return "S2";
        case ScenarioKind::S3: return "S3";
    }
    return "?";
}

void OracleInstance::validate() const {
    if (horizon < 1 || horizon > 8)
        throw ConfigError("oracle horizon must be 1..8 hours, got " + std::to_string(horizon));
    if (buildings.empty() || buildings.size() > 3)
        throw ConfigError("oracle instances take 1..3 buildings");
    if (evs.size() > 2)
        throw ConfigError("oracle instances take at most 2 EVs");
    for (const auto& b : buildings) {
        b.battery.validate();
        if (b.demand_kwh.size() != static_cast<std::size_t>(horizon) ||
            b.generation_kwh.size() != static_cast<std::size_t>(horizon))
            throw ConfigError("building '" + b.id + "' series must cover the instance horizon");
        if (b.battery_levels_kw.empty())
            throw ConfigError("building '" + b.id + "' has no battery rate levels");
        for (double l : b.battery_levels_kw)
            if (std::abs(l) > b.battery.max_rate_kw + kSocToleranceKwh)
                throw ConfigError("building '" + b.id + "' level " + format_double(l) +
                                  " kW exceeds the rate bound");
    }
    for (const auto& ev : evs) {
        ev.session.validate(tau_hours);
        if (ev.building >= buildings.size())
            throw ConfigError("EV '" + ev.session.id + "' references a missing building");
        if (ev.session.arrival_hour < 0 || ev.session.departure_hour() > horizon)
            throw ConfigError("EV '" + ev.session.id + "' window must lie inside the horizon");
        if (ev.rate_levels_kw.empty())
            throw ConfigError("EV '" + ev.session.id + "' has no rate levels");
        for (double l : ev.rate_levels_kw)
            if (l > ev.session.max_rate_kw + kSocToleranceKwh ||
                l < ev.session.rate_floor_kw() - kSocToleranceKwh)
                throw ConfigError("EV '" + ev.session.id + "' level " + format_double(l) +
                                  " kW outside its rate bounds");
    }
    pricing.validate();
}

namespace {

struct Variable {
    bool is_ev = false;
    std::size_t owner = 0; // building or ev index
    std::size_t building = 0;
    int hour = 0; // absolute hour in the horizon
    const std::vector<double>* levels = nullptr;
};

// Mutable enumeration state: building nets per hour (kWh, + = deficit) and
// running stored energy.
struct SearchState {
    std::vector<std::vector<double>> net; // [building][hour]
    std::vector<double> battery_stored;   // at current var frontier, per building
    std::vector<double> ev_stored;        // per ev
};

struct Candidate {
    double cost = std::numeric_limits<double>::infinity();
    std::vector<int> indices;
    bool feasible = false;

    bool better_than(const Candidate& other) const {
        if (!feasible) return false;
        if (!other.feasible) return true;
        if (cost != other.cost) return cost < other.cost;
        return indices < other.indices;
    }
};

double cluster_cost(const std::vector<std::vector<double>>& net, int horizon,
                    const PricingScheme& pricing, bool sharing) {
    double cost = 0.0;
    for (int h = 0; h < horizon; ++h) {
        if (sharing) {
            double total = 0.0;
            for (const auto& b : net) total += b[static_cast<std::size_t>(h)];
            cost += total > 0.0 ? total * pricing.buy : total * pricing.sell;
        } else {
            for (const auto& b : net) {
                const double v = b[static_cast<std::size_t>(h)];
                cost += v > 0.0 ? v * pricing.buy : v * pricing.sell;
            }
        }
    }
    return cost;
}

class Enumerator {
public:
    Enumerator(const OracleInstance& instance, bool sharing, std::vector<Variable> vars,
               SearchState base)
        : instance_(instance), sharing_(sharing), vars_(std::move(vars)), base_(std::move(base)) {}

    std::uint64_t combinations() const {
        std::uint64_t total = 1;
        for (const auto& v : vars_) {
            const std::uint64_t n = v.levels->size();
            if (total > kOracleSearchLimit / std::max<std::uint64_t>(n, 1))
                return kOracleSearchLimit + 1;
            total *= n;
        }
        return total;
    }

    Candidate run(EvalMode mode) {
        if (combinations() > kOracleSearchLimit)
            throw ConfigError("oracle search space exceeds " +
                              std::to_string(kOracleSearchLimit) + " combinations");
        if (mode == EvalMode::Serial || vars_.empty())
            return run_serial();
        return run_parallel();
    }

private:
    Candidate run_serial() {
        Candidate best;
        SearchState state = base_;
        std::vector<int> indices(vars_.size(), 0);
        descend(0, state, indices, best);
        return best;
    }

    // Partitions the subtrees under the first variable across threads; each
    // partition is searched serially and partitions merge in index order, so
    // the winner matches the serial sweep exactly.
    Candidate run_parallel() {
        const auto& levels = *vars_[0].levels;
        const long n = static_cast<long>(levels.size());
        std::vector<Candidate> local(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) {
            SearchState state = base_;
            std::vector<int> indices(vars_.size(), 0);
            indices[0] = static_cast<int>(i);
            if (assign(0, static_cast<std::size_t>(i), state)) {
                descend(1, state, indices, local[static_cast<std::size_t>(i)]);
                unassign(0, static_cast<std::size_t>(i), state);
            }
        }
        Candidate best;
        for (const auto& c : local)
            if (c.better_than(best)) best = c;
        return best;
    }

    void descend(std::size_t depth, SearchState& state, std::vector<int>& indices,
                 Candidate& best) {
        if (depth == vars_.size()) {
            const double cost = cluster_cost(state.net, instance_.horizon, instance_.pricing,
                                             sharing_);
            Candidate leaf;
            leaf.cost = cost;
            leaf.indices = indices;
            leaf.feasible = true;
            if (leaf.better_than(best)) best = std::move(leaf);
            return;
        }
        const auto& levels = *vars_[depth].levels;
        for (std::size_t li = 0; li < levels.size(); ++li) {
            indices[depth] = static_cast<int>(li);
            if (!assign(depth, li, state)) continue;
            descend(depth + 1, state, indices, best);
            unassign(depth, li, state);
        }
    }

    // Applies one level choice; false when the prefix is already infeasible.
    bool assign(std::size_t depth, std::size_t level_index, SearchState& state) {
        const auto& v = vars_[depth];
        const double rate = (*v.levels)[level_index];
        const double delta = rate * instance_.tau_hours;
        if (!v.is_ev) {
            const auto& b = instance_.buildings[v.owner];
            const double stored = state.battery_stored[v.owner] + delta;
            if (stored < -kSocToleranceKwh || stored > b.battery.capacity_kwh + kSocToleranceKwh)
                return false;
            state.battery_stored[v.owner] = stored;
        } else {
            const auto& ev = instance_.evs[v.owner];
            const double stored = state.ev_stored[v.owner] + delta;
            if (stored < -kSocToleranceKwh ||
                stored > ev.session.capacity_kwh + kSocToleranceKwh)
                return false;
            const long remaining = ev.session.departure_hour() - (v.hour + 1);
            const double max_later = ev.session.max_rate_kw * instance_.tau_hours *
                                     static_cast<double>(remaining);
            if (stored + max_later < ev.session.required_energy_kwh() - kSocToleranceKwh)
                return false; // departure target already unreachable
            state.ev_stored[v.owner] = stored;
        }
        state.net[v.building][static_cast<std::size_t>(v.hour)] += delta;
        return true;
    }

    void unassign(std::size_t depth, std::size_t level_index, SearchState& state) {
        const auto& v = vars_[depth];
        const double delta = (*v.levels)[level_index] * instance_.tau_hours;
        if (!v.is_ev)
            state.battery_stored[v.owner] -= delta;
        else
            state.ev_stored[v.owner] -= delta;
        state.net[v.building][static_cast<std::size_t>(v.hour)] -= delta;
    }

    const OracleInstance& instance_;
    bool sharing_;
    std::vector<Variable> vars_;
    SearchState base_;
};

SearchState base_state(const OracleInstance& instance, bool include_immediate_evs) {
    SearchState s;
    s.net.resize(instance.buildings.size());
    for (std::size_t j = 0; j < instance.buildings.size(); ++j) {
        const auto& b = instance.buildings[j];
        s.net[j].resize(static_cast<std::size_t>(instance.horizon));
        for (int h = 0; h < instance.horizon; ++h)
            s.net[j][static_cast<std::size_t>(h)] =
                b.demand_kwh[static_cast<std::size_t>(h)] -
                b.generation_kwh[static_cast<std::size_t>(h)];
        s.battery_stored.push_back(b.initial_stored_kwh);
    }
    for (const auto& ev : instance.evs) {
        s.ev_stored.push_back(ev.session.arrival_energy_kwh());
        if (include_immediate_evs) {
            const auto rates = immediate_charge_schedule(ev.session, instance.tau_hours);
            for (std::size_t i = 0; i < rates.size(); ++i)
                s.net[ev.building][static_cast<std::size_t>(ev.session.arrival_hour) + i] +=
                    rates[i] * instance.tau_hours;
        }
    }
    return s;
}

std::vector<Variable> battery_vars(const OracleInstance& instance, std::size_t building) {
    std::vector<Variable> vars;
    for (int h = 0; h < instance.horizon; ++h)
        vars.push_back({false, building, building, h, &instance.buildings[building].battery_levels_kw});
    return vars;
}

std::vector<Variable> joint_vars(const OracleInstance& instance, bool include_evs) {
    std::vector<Variable> vars;
    for (std::size_t j = 0; j < instance.buildings.size(); ++j) {
        auto bv = battery_vars(instance, j);
        vars.insert(vars.end(), bv.begin(), bv.end());
    }
    if (include_evs) {
        for (std::size_t k = 0; k < instance.evs.size(); ++k) {
            const auto& ev = instance.evs[k];
            for (long h = ev.session.arrival_hour; h < ev.session.departure_hour(); ++h)
                vars.push_back({true, k, ev.building, static_cast<int>(h), &ev.rate_levels_kw});
        }
    }
    return vars;
}

OraclePlan plan_from_candidate(const OracleInstance& instance, const std::vector<Variable>& vars,
                               const Candidate& cand, bool evs_immediate) {
    OraclePlan plan;
    plan.feasible = cand.feasible;
    plan.cost = cand.cost;
    plan.battery_rates_kw.assign(instance.buildings.size(),
                                 std::vector<double>(static_cast<std::size_t>(instance.horizon), 0.0));
    for (const auto& ev : instance.evs)
        plan.ev_rates_kw.push_back(evs_immediate
                                       ? immediate_charge_schedule(ev.session, instance.tau_hours)
                                       : std::vector<double>(
                                             static_cast<std::size_t>(ev.session.duration_hours), 0.0));
    if (!cand.feasible) return plan;
    for (std::size_t d = 0; d < vars.size(); ++d) {
        const auto& v = vars[d];
        const double rate = (*v.levels)[static_cast<std::size_t>(cand.indices[d])];
        if (!v.is_ev)
            plan.battery_rates_kw[v.owner][static_cast<std::size_t>(v.hour)] = rate;
        else
            plan.ev_rates_kw[v.owner][static_cast<std::size_t>(
                v.hour - instance.evs[v.owner].session.arrival_hour)] = rate;
    }
    return plan;
}

} // namespace

OraclePlan brute_force_optimal(const OracleInstance& instance, ScenarioKind semantics,
                               EvalMode mode) {
    instance.validate();

    if (semantics == ScenarioKind::S1) {
        // No sharing and a separable objective: each building enumerates
        // alone, which keeps the search space linear in the cluster size.
        OraclePlan plan;
        plan.feasible = true;
        plan.cost = 0.0;
        plan.battery_rates_kw.assign(
            instance.buildings.size(),
            std::vector<double>(static_cast<std::size_t>(instance.horizon), 0.0));
        for (const auto& ev : instance.evs)
            plan.ev_rates_kw.push_back(immediate_charge_schedule(ev.session, instance.tau_hours));
        for (std::size_t j = 0; j < instance.buildings.size(); ++j) {
            OracleInstance sub;
            sub.horizon = instance.horizon;
            sub.pricing = instance.pricing;
            sub.tau_hours = instance.tau_hours;
            sub.buildings.push_back(instance.buildings[j]);
            for (const auto& ev : instance.evs)
                if (ev.building == j) {
                    OracleEv sub_ev = ev;
                    sub_ev.building = 0;
                    sub.evs.push_back(sub_ev);
                }
            auto vars = battery_vars(sub, 0);
            Enumerator e(sub, false, vars, base_state(sub, true));
            const Candidate best = e.run(mode);
            if (!best.feasible) {
                plan.feasible = false;
                return plan;
            }
            plan.cost += best.cost;
            plan.combinations += e.combinations();
            const OraclePlan sub_plan = plan_from_candidate(sub, vars, best, true);
            plan.battery_rates_kw[j] = sub_plan.battery_rates_kw[0];
        }
        return plan;
    }

    const bool free_evs = semantics == ScenarioKind::S3;
    const auto vars = joint_vars(instance, free_evs);
    Enumerator e(instance, true, vars, base_state(instance, !free_evs));
    const Candidate best = e.run(mode);
    OraclePlan plan = plan_from_candidate(instance, vars, best, !free_evs);
    plan.combinations = e.combinations();
    return plan;
}

double oracle_plan_cost(const OracleInstance& instance, ScenarioKind semantics,
                        const std::vector<std::vector<double>>& battery_rates_kw,
                        const std::vector<std::vector<double>>& ev_rates_kw) {
    instance.validate();
    std::vector<std::vector<double>> net(instance.buildings.size());
    for (std::size_t j = 0; j < instance.buildings.size(); ++j) {
        const auto& b = instance.buildings[j];
        net[j].resize(static_cast<std::size_t>(instance.horizon));
        for (int h = 0; h < instance.horizon; ++h)
            net[j][static_cast<std::size_t>(h)] =
                b.demand_kwh[static_cast<std::size_t>(h)] -
                b.generation_kwh[static_cast<std::size_t>(h)] +
                battery_rates_kw[j][static_cast<std::size_t>(h)] * instance.tau_hours;
    }
    for (std::size_t k = 0; k < instance.evs.size(); ++k) {
        const auto& ev = instance.evs[k];
        for (std::size_t i = 0; i < ev_rates_kw[k].size(); ++i)
            net[ev.building][static_cast<std::size_t>(ev.session.arrival_hour) + i] +=
                ev_rates_kw[k][i] * instance.tau_hours;
    }
    return cluster_cost(net, instance.horizon, instance.pricing,
                        semantics != ScenarioKind::S1);
}

} // namespace cluster_dispatch
