#include "cluster_dispatch/report_io.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/time_series.hpp"

namespace cluster_dispatch {

using nlohmann::ordered_json;

namespace {

std::string percent_1dp(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", fraction * 100.0);
    return buf;
}

std::string number_1dp(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

ordered_json optional_number(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

} // namespace

ordered_json day_report_json(const DayReport& report, const std::string& currency) {
    ordered_json j;
    j["scenario"] = report.scenario;
    j["day"] = report.day;
    j["currency"] = currency;
    j["generation_kwh"] = report.generation_kwh;
    j["demand_kwh"] = report.demand_kwh;
    j["ev_charge_kwh"] = report.ev_charge_kwh;
    j["grid_import_kwh"] = report.grid_import_kwh;
    j["grid_export_kwh"] = report.grid_export_kwh;
    j["cost"] = report.cost;
    j["self_consumption"] = optional_number(report.self_consumption);
    ordered_json buildings = ordered_json::array();
    for (const auto& b : report.buildings) {
        ordered_json bj;
        bj["id"] = b.id;
        bj["demand_kwh"] = b.demand_kwh;
        bj["generation_kwh"] = b.generation_kwh;
        bj["ev_charge_kwh"] = b.ev_charge_kwh;
        bj["grid_import_kwh"] = b.grid_import_kwh;
        bj["grid_export_kwh"] = b.grid_export_kwh;
        bj["cluster_bought_kwh"] = b.cluster_bought_kwh;
        bj["cluster_sold_kwh"] = b.cluster_sold_kwh;
        bj["cost"] = b.cost;
        buildings.push_back(bj);
    }
    j["buildings"] = buildings;
    return j;
}

ordered_json ledger_json(const EnergyFlowLedger& ledger) {
    ordered_json j;
    j["building_ids"] = ledger.building_ids;
    ordered_json totals = ordered_json::array();
    for (const auto& t : ledger.totals) {
        ordered_json tj;
        tj["grid_import_kwh"] = t.grid_import;
        tj["grid_export_kwh"] = t.grid_export;
        tj["cluster_matched_kwh"] = t.matched;
        totals.push_back(tj);
    }
    j["hourly_totals"] = totals;
    ordered_json rows = ordered_json::array();
    for (const auto& building_rows : ledger.rows) {
        ordered_json br = ordered_json::array();
        for (const auto& r : building_rows) {
            ordered_json rj;
            rj["pv_to_load_kwh"] = r.pv_to_load;
            rj["battery_flow_kwh"] = r.battery_flow;
            rj["ev_charge_kwh"] = r.ev_charge;
            rj["cluster_trade_kwh"] = r.cluster_trade;
            rj["grid_flow_kwh"] = r.grid_flow;
            br.push_back(rj);
        }
        rows.push_back(br);
    }
    j["rows"] = rows;
    return j;
}

ordered_json day_output_json(const DayOutput& out, const ClusterConfig& cfg, std::uint64_t seed,
                             bool with_timestamp) {
    ordered_json j;
    j["schema"] = "cluster-dispatch/day/v1";
    j["seed"] = seed;
    if (with_timestamp) j["generated_at"] = current_timestamp_utc();
    j["report"] = day_report_json(out.report, cfg.currency);
    if (!out.rep_rates_kw.empty()) {
        j["rep_battery_rates_kw"] = out.rep_rates_kw;
        j["clamped_target_kwh"] = out.clamped_target_kwh;
    }
    j["ledger"] = ledger_json(out.ledger);
    return j;
}

ordered_json comparison_json(const ScenarioComparison& cmp, std::uint64_t seed,
                             const std::string& currency, bool with_timestamp) {
    ordered_json j;
    j["schema"] = "cluster-dispatch/compare/v1";
    j["seed"] = seed;
    j["currency"] = currency;
    if (with_timestamp) j["generated_at"] = current_timestamp_utc();
    ordered_json rows = ordered_json::array();
    for (const auto& r : cmp.rows) {
        ordered_json rj;
        rj["day"] = r.day;
        rj["self_consumption_s1"] = optional_number(r.sc_s1);
        rj["self_consumption_s2"] = optional_number(r.sc_s2);
        rj["self_consumption_s3"] = optional_number(r.sc_s3);
        rj["sc_improvement_s2_vs_s1_pct"] = optional_number(r.sc_impr_s2);
        rj["sc_improvement_s3_vs_s1_pct"] = optional_number(r.sc_impr_s3);
        rj["cost_s1"] = r.cost_s1;
        rj["cost_s2"] = r.cost_s2;
        rj["cost_s3"] = r.cost_s3;
        rj["cost_improvement_s2_vs_s1_pct"] = optional_number(r.cost_impr_s2);
        rj["cost_improvement_s3_vs_s1_pct"] = optional_number(r.cost_impr_s3);
        rows.push_back(rj);
    }
    j["rows"] = rows;
    return j;
}

std::string comparison_csv(const ScenarioComparison& cmp) {
    std::string out =
        "day,sc_s1_pct,sc_s2_pct,sc_s3_pct,sc_impr_s2_vs_s1_pct,sc_impr_s3_vs_s1_pct,"
        "cost_s1,cost_s2,cost_s3,cost_impr_s2_vs_s1_pct,cost_impr_s3_vs_s1_pct\n";
    auto pct = [](const std::optional<double>& v) {
        return v ? percent_1dp(*v) : std::string{"n/a"};
    };
    auto num = [](const std::optional<double>& v) {
        return v ? number_1dp(*v) : std::string{"n/a"};
    };
    for (const auto& r : cmp.rows) {
        out += std::to_string(r.day + 1);
        out += ',' + pct(r.sc_s1) + ',' + pct(r.sc_s2) + ',' + pct(r.sc_s3);
        out += ',' + num(r.sc_impr_s2) + ',' + num(r.sc_impr_s3);
        out += ',' + format_double(r.cost_s1) + ',' + format_double(r.cost_s2) + ',' +
               format_double(r.cost_s3);
        out += ',' + num(r.cost_impr_s2) + ',' + num(r.cost_impr_s3);
        out += '\n';
    }
    return out;
}

std::string plot_self_consumption_csv(const ScenarioComparison& cmp) {
    std::string out = "day,s1_pct,s2_pct,s3_pct\n";
    for (const auto& r : cmp.rows) {
        auto pct = [](const std::optional<double>& v) {
            return v ? percent_1dp(*v) : std::string{"n/a"};
        };
        out += std::to_string(r.day + 1) + ',' + pct(r.sc_s1) + ',' + pct(r.sc_s2) + ',' +
               pct(r.sc_s3) + '\n';
    }
    return out;
}

std::string plot_costs_csv(const ScenarioComparison& cmp) {
    std::string out = "day,s1,s2,s3\n";
    for (const auto& r : cmp.rows)
        out += std::to_string(r.day + 1) + ',' + format_double(r.cost_s1) + ',' +
               format_double(r.cost_s2) + ',' + format_double(r.cost_s3) + '\n';
    return out;
}

ordered_json oracle_plan_json(const OraclePlan& plan, const OracleInstance& instance,
                              const std::string& semantics) {
    ordered_json j;
    j["schema"] = "cluster-dispatch/oracle/v1";
    j["semantics"] = semantics;
    j["feasible"] = plan.feasible;
    j["combinations"] = plan.combinations;
    if (plan.feasible) {
        j["cost"] = plan.cost;
        ordered_json batteries = ordered_json::array();
        for (std::size_t b = 0; b < plan.battery_rates_kw.size(); ++b) {
            ordered_json bj;
            bj["building"] = instance.buildings[b].id;
            bj["rates_kw"] = plan.battery_rates_kw[b];
            batteries.push_back(bj);
        }
        j["battery_rates"] = batteries;
        ordered_json evs = ordered_json::array();
        for (std::size_t k = 0; k < plan.ev_rates_kw.size(); ++k) {
            ordered_json ej;
            ej["id"] = instance.evs[k].session.id;
            ej["rates_kw"] = plan.ev_rates_kw[k];
            evs.push_back(ej);
        }
        j["ev_rates"] = evs;
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write output file '" + path + "'");
    out << content;
}

std::string current_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
    const EpochHour hour = secs.count() / 3600;
    const long rem = secs.count() % 3600;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s:%02ld:%02ldZ", format_hour_timestamp(hour).substr(0, 13).c_str(),
                  rem / 60, rem % 60);
    return buf;
}

} // namespace cluster_dispatch
