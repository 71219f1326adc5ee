#include "cluster_dispatch/settlement.hpp"

#include <cmath>

#include "cluster_dispatch/errors.hpp"

namespace cluster_dispatch {

double EnergyFlowLedger::daily_grid_import() const {
    double total = 0.0;
    for (const auto& t : totals) total += t.grid_import;
    return total;
}

double EnergyFlowLedger::daily_grid_export() const {
    double total = 0.0;
    for (const auto& t : totals) total += t.grid_export;
    return total;
}

SettledHour settle_hour(std::span<const double> net_positions_kwh, bool sharing_enabled) {
    const std::size_t n = net_positions_kwh.size();
    SettledHour out;
    out.cluster_trade.assign(n, 0.0);
    out.grid_flow.assign(n, 0.0);

    double surplus = 0.0, deficit = 0.0;
    for (double net : net_positions_kwh) {
        if (net > 0.0)
            deficit += net;
        else
            surplus += -net;
    }

    if (!sharing_enabled) {
        for (std::size_t j = 0; j < n; ++j)
            out.grid_flow[j] = -net_positions_kwh[j];
        out.totals.grid_import = deficit;
        out.totals.grid_export = surplus;
        return out;
    }

    const double matched = std::min(surplus, deficit);
    out.totals.matched = matched;
    for (std::size_t j = 0; j < n; ++j) {
        const double net = net_positions_kwh[j];
        if (net > 0.0) {
            const double bought = deficit > 0.0 ? matched * (net / deficit) : 0.0;
            out.cluster_trade[j] = -bought;
            out.grid_flow[j] = -(net - bought); // residual import
            out.totals.grid_import += net - bought;
        } else if (net < 0.0) {
            const double sold = surplus > 0.0 ? matched * (-net / surplus) : 0.0;
            out.cluster_trade[j] = sold;
            out.grid_flow[j] = -net - sold; // residual export
            out.totals.grid_export += -net - sold;
        }
    }
    return out;
}

std::optional<double> self_consumption(const EnergyFlowLedger& ledger, double generation_kwh) {
    if (generation_kwh <= 0.0) return std::nullopt;
    return 1.0 - ledger.daily_grid_export() / generation_kwh;
}

double daily_cluster_cost(const EnergyFlowLedger& ledger, const PricingScheme& pricing) {
    double cost = 0.0;
    for (const auto& t : ledger.totals)
        cost += t.grid_import * pricing.buy - t.grid_export * pricing.sell;
    return cost;
}

namespace {

std::optional<double> relative_increase_pct(std::optional<double> base, std::optional<double> v) {
    if (!base || !v || *base == 0.0) return std::nullopt;
    return (*v / *base - 1.0) * 100.0;
}

std::optional<double> relative_reduction_pct(double base, double v) {
    if (base == 0.0) return std::nullopt;
    return (1.0 - v / base) * 100.0;
}

} // namespace

ScenarioComparison compare_scenarios(std::span<const DayReport> s1, std::span<const DayReport> s2,
                                     std::span<const DayReport> s3) {
    if (s1.size() != s2.size() || s1.size() != s3.size())
        throw ConfigError("scenario day counts differ: " + std::to_string(s1.size()) + "/" +
                          std::to_string(s2.size()) + "/" + std::to_string(s3.size()));
    ScenarioComparison cmp;
    for (std::size_t d = 0; d < s1.size(); ++d) {
        ComparisonRow row;
        row.day = s1[d].day;
        row.sc_s1 = s1[d].self_consumption;
        row.sc_s2 = s2[d].self_consumption;
        row.sc_s3 = s3[d].self_consumption;
        row.cost_s1 = s1[d].cost;
        row.cost_s2 = s2[d].cost;
        row.cost_s3 = s3[d].cost;
        row.sc_impr_s2 = relative_increase_pct(row.sc_s1, row.sc_s2);
        row.sc_impr_s3 = relative_increase_pct(row.sc_s1, row.sc_s3);
        row.cost_impr_s2 = relative_reduction_pct(row.cost_s1, row.cost_s2);
        row.cost_impr_s3 = relative_reduction_pct(row.cost_s1, row.cost_s3);
        cmp.rows.push_back(row);
    }
    return cmp;
}

} // namespace cluster_dispatch
