#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cluster_dispatch/pricing.hpp"

namespace cluster_dispatch {

// Per-building, per-hour settled flows, all kWh for the slot. Signs:
// battery_flow + = charging, cluster_trade + = sold to the cluster,
// grid_flow + = exported to the grid.
struct FlowRow {
    double pv_to_load = 0.0;
    double battery_flow = 0.0;
    double ev_charge = 0.0;
    double cluster_trade = 0.0;
    double grid_flow = 0.0;
};

struct HourTotals {
    double grid_import = 0.0; // kWh the cluster bought this hour
    double grid_export = 0.0; // kWh the cluster sold this hour
    double matched = 0.0;     // kWh traded inside the cluster
};

struct EnergyFlowLedger {
    std::vector<std::string> building_ids;
    std::vector<std::vector<FlowRow>> rows; // [building][hour]
    std::vector<HourTotals> totals;         // [hour]

    std::size_t hours() const { return totals.size(); }
    std::size_t building_count() const { return building_ids.size(); }
    double daily_grid_import() const;
    double daily_grid_export() const;
};

struct SettledHour {
    std::vector<double> cluster_trade; // + = sold to the cluster
    std::vector<double> grid_flow;     // + = exported to the grid
    HourTotals totals;
};

// net_position: + = deficit (energy needed), - = surplus, the sign of the
// hourly power mismatch. Sharing matches min(total surplus, total deficit)
// inside the cluster, allocated pro rata over surplus holders and deficit
// holders; the residual flows to the grid. With sharing disabled every net
// position goes straight to the grid.
SettledHour settle_hour(std::span<const double> net_positions_kwh, bool sharing_enabled);

// 1 - export/generation for the day; empty on zero-generation days.
std::optional<double> self_consumption(const EnergyFlowLedger& ledger, double generation_kwh);

// Grid imports at the buy price minus grid exports at the feed-in price.
// Intra-cluster trades cancel at cluster level regardless of the cluster
// price, which only redistributes cost between buildings.
double daily_cluster_cost(const EnergyFlowLedger& ledger, const PricingScheme& pricing);

struct BuildingDayBreakdown {
    std::string id;
    double demand_kwh = 0.0;
    double generation_kwh = 0.0;
    double ev_charge_kwh = 0.0;
    double grid_import_kwh = 0.0;
    double grid_export_kwh = 0.0;
    double cluster_bought_kwh = 0.0;
    double cluster_sold_kwh = 0.0;
    double cost = 0.0; // includes intra-cluster payments at the cluster price
};

struct DayReport {
    std::string scenario;
    int day = 0;
    double generation_kwh = 0.0;
    double demand_kwh = 0.0;
    double ev_charge_kwh = 0.0;
    double grid_import_kwh = 0.0;
    double grid_export_kwh = 0.0;
    double cost = 0.0;
    std::optional<double> self_consumption; // fraction
    std::vector<BuildingDayBreakdown> buildings;
};

struct ComparisonRow {
    int day = 0;
    std::optional<double> sc_s1, sc_s2, sc_s3;          // fractions
    double cost_s1 = 0.0, cost_s2 = 0.0, cost_s3 = 0.0;
    // relative improvements over scenario 1, in percent
    std::optional<double> sc_impr_s2, sc_impr_s3;
    std::optional<double> cost_impr_s2, cost_impr_s3;
};

struct ScenarioComparison {
    std::vector<ComparisonRow> rows;
};

// One row per day. Self-consumption improvements are relative increases
// (sc_s/sc_1 - 1) and cost improvements relative reductions (1 - c_s/c_1),
// both in percent; a zero or missing scenario-1 baseline leaves the column
// empty.
ScenarioComparison compare_scenarios(std::span<const DayReport> s1, std::span<const DayReport> s2,
                                     std::span<const DayReport> s3);

} // namespace cluster_dispatch
