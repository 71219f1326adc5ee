#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cluster_dispatch/oracle.hpp"
#include "cluster_dispatch/scenario_engine.hpp"
#include "cluster_dispatch/settlement.hpp"

namespace cluster_dispatch {

// All serializers emit ordered keys and shortest round-trip decimals, so a
// rerun with the same inputs reproduces every output byte for byte.
nlohmann::ordered_json day_report_json(const DayReport& report, const std::string& currency);
nlohmann::ordered_json ledger_json(const EnergyFlowLedger& ledger);
nlohmann::ordered_json day_output_json(const DayOutput& out, const ClusterConfig& cfg,
                                       std::uint64_t seed, bool with_timestamp);

nlohmann::ordered_json comparison_json(const ScenarioComparison& cmp, std::uint64_t seed,
                                       const std::string& currency, bool with_timestamp);
std::string comparison_csv(const ScenarioComparison& cmp);

// Plot-ready per-day series, one file per panel.
std::string plot_self_consumption_csv(const ScenarioComparison& cmp);
std::string plot_costs_csv(const ScenarioComparison& cmp);

nlohmann::ordered_json oracle_plan_json(const OraclePlan& plan, const OracleInstance& instance,
                                        const std::string& semantics);

void write_text_file(const std::string& path, const std::string& content);

std::string current_timestamp_utc();

} // namespace cluster_dispatch
