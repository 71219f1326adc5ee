#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cluster_dispatch/config.hpp"
#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/parallel.hpp"
#include "cluster_dispatch/report_io.hpp"

namespace cd = cluster_dispatch;

namespace {

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const auto end = comma == std::string::npos ? csv.size() : comma;
        if (end > pos) out.push_back(csv.substr(pos, end - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

cd::ClusterConfig load_for_run(const cd::RunManifest& manifest) {
    cd::ClusterConfig cfg = cd::load_cluster_config(manifest.config_path);
    if (manifest.seed) cfg.seed = *manifest.seed;
    if (manifest.allow_v2b) cfg.allow_v2b = true;
    return cfg;
}

void note_soc_redraws(const cd::ScenarioRun& run) {
    for (const auto& inst : run.sessions)
        if (inst.soc_redraws > 0)
            std::cerr << "note: EV " << inst.session.id << ": discarded " << inst.soc_redraws
                      << " infeasible arrival-SOC draw(s)\n";
}

std::string day_report_csv_header() {
    return "scenario,day,generation_kwh,demand_kwh,ev_charge_kwh,grid_import_kwh,"
           "grid_export_kwh,cost,self_consumption_pct\n";
}

std::string day_report_csv_row(const cd::DayReport& r) {
    std::string row = r.scenario + ',' + std::to_string(r.day + 1);
    row += ',' + cd::format_double(r.generation_kwh);
    row += ',' + cd::format_double(r.demand_kwh);
    row += ',' + cd::format_double(r.ev_charge_kwh);
    row += ',' + cd::format_double(r.grid_import_kwh);
    row += ',' + cd::format_double(r.grid_export_kwh);
    row += ',' + cd::format_double(r.cost);
    if (r.self_consumption) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", *r.self_consumption * 100.0);
        row += ',';
        row += buf;
    } else {
        row += ",n/a";
    }
    return row + '\n';
}

void write_scenario_outputs(const cd::ScenarioRun& run, const cd::ClusterConfig& cfg,
                            const cd::RunManifest& manifest) {
    const std::string dir = manifest.out_dir + "/" + run.scenario.id;
    if (manifest.emit_json)
        for (const auto& day : run.days)
            cd::write_text_file(dir + "/" + std::to_string(day.day) + ".json",
                                cd::day_output_json(day, cfg, cfg.seed, !manifest.no_timestamp)
                                        .dump(2) +
                                    "\n");
    if (manifest.emit_csv) {
        std::string csv = day_report_csv_header();
        for (const auto& day : run.days) csv += day_report_csv_row(day.report);
        cd::write_text_file(dir + "/days.csv", csv);
    }
}

int cmd_simulate(const cd::RunManifest& manifest) {
    const cd::ClusterConfig cfg = load_for_run(manifest);
    for (const auto& id : manifest.scenarios) {
        const cd::ScenarioRun run =
            cd::run_scenario(cfg, cd::ScenarioConfig::standard(id), manifest.days);
        note_soc_redraws(run);
        write_scenario_outputs(run, cfg, manifest);
        double total = 0.0;
        for (const auto& d : run.days) total += d.report.cost;
        std::cout << id << ": " << manifest.days << " day(s), total cost "
                  << cd::format_double(total) << " " << cfg.currency << "\n";
    }
    return 0;
}

int cmd_compare(const cd::RunManifest& manifest) {
    const cd::ClusterConfig cfg = load_for_run(manifest);
    std::vector<cd::DayReport> s1, s2, s3;
    for (const std::string id : {"S1", "S2", "S3"}) {
        const cd::ScenarioRun run =
            cd::run_scenario(cfg, cd::ScenarioConfig::standard(id), manifest.days);
        note_soc_redraws(run);
        write_scenario_outputs(run, cfg, manifest);
        auto& dest = id == "S1" ? s1 : id == "S2" ? s2 : s3;
        for (const auto& d : run.days) dest.push_back(d.report);
    }
    const cd::ScenarioComparison cmp = cd::compare_scenarios(s1, s2, s3);
    cd::write_text_file(manifest.out_dir + "/compare.csv", cd::comparison_csv(cmp));
    if (manifest.emit_json)
        cd::write_text_file(
            manifest.out_dir + "/compare.json",
            cd::comparison_json(cmp, cfg.seed, cfg.currency, !manifest.no_timestamp).dump(2) + "\n");
    if (manifest.emit_plotdata) {
        cd::write_text_file(manifest.out_dir + "/plot_self_consumption.csv",
                            cd::plot_self_consumption_csv(cmp));
        cd::write_text_file(manifest.out_dir + "/plot_costs.csv", cd::plot_costs_csv(cmp));
    }
    std::cout << "compared S1/S2/S3 over " << manifest.days << " day(s); table at "
              << manifest.out_dir << "/compare.csv\n";
    return 0;
}

int cmd_oracle(const std::string& instance_path, const std::string& semantics,
               const std::string& out_path, bool serial) {
    const cd::OracleInstance instance = cd::load_oracle_instance(instance_path);
    const cd::OraclePlan plan =
        cd::brute_force_optimal(instance, cd::scenario_kind_from_name(semantics),
                                serial ? cd::EvalMode::Serial : cd::EvalMode::Parallel);
    const std::string text = cd::oracle_plan_json(plan, instance, semantics).dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        cd::write_text_file(out_path, text);
    if (!plan.feasible) {
        std::cerr << "oracle: no feasible plan on the rate grid\n";
        return 2;
    }
    return 0;
}

int cmd_validate(const std::string& config_path) {
    const cd::ClusterConfig cfg = cd::load_cluster_config(config_path);
    std::cout << "config OK: " << cfg.buildings.size() << " building(s), " << cfg.evs.size()
              << " EV pattern(s), horizon " << cfg.horizon_hours << " h, profiles cover "
              << cfg.buildings.front().demand.size() << " h, seed " << cfg.seed << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    cd::apply_thread_cap();

    CLI::App app{"Building-cluster coordinated dispatch simulator"};
    app.require_subcommand(1);

    cd::RunManifest manifest;
    std::string scenario_csv = "S1,S2,S3";
    std::string emit_csv_list = "json";
    std::uint64_t seed_value = 0;
    bool seed_set = false;

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", manifest.config_path, "cluster config JSON")->required();
        cmd->add_option("--days", manifest.days, "number of simulated days")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed_value, "override the config seed")
            ->each([&](const std::string&) { seed_set = true; });
        cmd->add_option("--out", manifest.out_dir, "output directory");
        cmd->add_option("--emit", emit_csv_list, "comma list of json,csv,plotdata");
        cmd->add_flag("--allow-v2b", manifest.allow_v2b, "allow vehicle-to-building discharge");
        cmd->add_flag("--no-timestamp", manifest.no_timestamp,
                      "omit the generation timestamp from outputs");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run scenarios and write day reports");
    add_run_flags(simulate);
    simulate->add_option("--scenario", scenario_csv, "comma list of S1,S2,S3");

    CLI::App* compare = app.add_subcommand("compare", "run all scenarios and tabulate KPIs");
    add_run_flags(compare);

    CLI::App* oracle = app.add_subcommand("oracle", "exact enumeration on a desk-scale instance");
    std::string oracle_semantics = "S3";
    std::string oracle_out;
    bool oracle_serial = false;
    oracle->add_option("--config", manifest.config_path, "oracle instance JSON")->required();
    oracle->add_option("--scenario", oracle_semantics, "scenario semantics: S1, S2 or S3");
    oracle->add_option("--out", oracle_out, "output file (stdout when omitted)");
    oracle->add_flag("--serial", oracle_serial, "force the serial reference enumeration");

    CLI::App* validate = app.add_subcommand("validate-config", "parse and validate a config");
    validate->add_option("--config", manifest.config_path, "cluster config JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (seed_set) manifest.seed = seed_value;
        for (const auto& part : split_list(emit_csv_list)) {
            if (part == "json") manifest.emit_json = true;
            else if (part == "csv") manifest.emit_csv = true;
            else if (part == "plotdata") manifest.emit_plotdata = true;
            else throw cd::ConfigError("unknown emit kind '" + part + "'");
        }
        if (simulate->parsed()) {
            manifest.scenarios = split_list(scenario_csv);
            for (const auto& id : manifest.scenarios)
                cd::ScenarioConfig::standard(id); // reject unknown ids early
            return cmd_simulate(manifest);
        }
        if (compare->parsed()) return cmd_compare(manifest);
        if (oracle->parsed())
            return cmd_oracle(manifest.config_path, oracle_semantics, oracle_out, oracle_serial);
        if (validate->parsed()) return cmd_validate(manifest.config_path);
    } catch (const cd::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
