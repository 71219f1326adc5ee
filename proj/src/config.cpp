#include "cluster_dispatch/config.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/pv_array.hpp"

namespace cluster_dispatch {

namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
}

double require_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(where + ": missing or non-numeric field '" + key + "'");
    return j[key].get<double>();
}

std::string require_string(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_string())
        throw ConfigError(where + ": missing or non-string field '" + key + "'");
    return j[key].get<std::string>();
}

PricingScheme parse_pricing(const json& j, const std::string& where) {
    PricingScheme p;
    p.buy = require_number(j, "buy", where);
    p.sell = require_number(j, "sell", where);
    p.cluster = require_number(j, "cluster", where);
    p.validate();
    return p;
}

BatterySpec parse_battery(const json& j, const std::string& where) {
    BatterySpec b;
    b.capacity_kwh = require_number(j, "capacity_kwh", where);
    b.max_rate_kw = require_number(j, "max_rate_kw", where);
    b.validate();
    return b;
}

std::string resolve_path(const std::string& base_dir, const std::string& path) {
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

} // namespace

ClusterConfig load_cluster_config(const std::string& path) {
    const json root = load_json_file(path);
    const std::string base_dir = std::filesystem::path(path).parent_path().string();

    ClusterConfig cfg;
    cfg.horizon_hours = root.value("horizon_hours", 24);
    cfg.seed = root.value("seed", std::uint64_t{1});
    cfg.currency = root.value("currency", std::string{"EUR"});
    cfg.allow_v2b = root.value("allow_v2b", false);
    if (!root.contains("pricing"))
        throw ConfigError(path + ": missing 'pricing' section");
    cfg.pricing = parse_pricing(root["pricing"], path + ": pricing");

    if (root.contains("ga")) {
        const json& g = root["ga"];
        cfg.ga.population = g.value("population", cfg.ga.population);
        cfg.ga.generations = g.value("generations", cfg.ga.generations);
        cfg.ga.crossover_prob = g.value("crossover_prob", cfg.ga.crossover_prob);
        cfg.ga.mutation_prob = g.value("mutation_prob", cfg.ga.mutation_prob);
        cfg.ga.mutation_scale = g.value("mutation_scale", cfg.ga.mutation_scale);
        cfg.ga.tournament = g.value("tournament", cfg.ga.tournament);
        cfg.ga.elitism = g.value("elitism", cfg.ga.elitism);
        cfg.ga.penalty_weight = g.value("penalty_weight", cfg.ga.penalty_weight);
        cfg.ga.validate();
    }

    if (!root.contains("buildings") || !root["buildings"].is_array() || root["buildings"].empty())
        throw ConfigError(path + ": missing or empty 'buildings' array");
    for (const auto& bj : root["buildings"]) {
        BuildingSetup b;
        b.id = require_string(bj, "id", path + ": building");
        const std::string where = path + ": building '" + b.id + "'";
        b.demand = load_profile(resolve_path(base_dir, require_string(bj, "demand_profile", where)),
                                Unit::kWhPerSlot);
        const TimeSeries irradiance = load_profile(
            resolve_path(base_dir, require_string(bj, "irradiance_profile", where)), Unit::WPerM2);
        if (!bj.contains("pv"))
            throw ConfigError(where + ": missing 'pv' section");
        const json& pv = bj["pv"];
        b.pv.cover_transmittance = require_number(pv, "cover_transmittance", where + " pv");
        b.pv.incidence_modifier = require_number(pv, "incidence_modifier", where + " pv");
        b.pv.efficiency = require_number(pv, "efficiency", where + " pv");
        b.pv.area_m2 = require_number(pv, "area_m2", where + " pv");
        b.pv.validate();
        b.generation = generation_series(b.pv, irradiance);
        if (!bj.contains("battery"))
            throw ConfigError(where + ": missing 'battery' section");
        b.battery = parse_battery(bj["battery"], where + " battery");
        b.initial_stored_kwh = bj["battery"].value("initial_stored_kwh", 0.0);
        cfg.buildings.push_back(std::move(b));
    }

    if (root.contains("ev_sessions")) {
        for (const auto& ej : root["ev_sessions"]) {
            EvTemplate ev;
            ev.id = require_string(ej, "id", path + ": ev_session");
            const std::string where = path + ": EV '" + ev.id + "'";
            ev.building = cfg.building_index(require_string(ej, "building", where));
            ev.arrival_hour = static_cast<int>(require_number(ej, "arrival_hour", where));
            ev.duration_hours = static_cast<int>(require_number(ej, "duration_hours", where));
            ev.capacity_kwh = require_number(ej, "capacity_kwh", where);
            ev.max_rate_kw = require_number(ej, "max_rate_kw", where);
            if (ej.contains("arrival_soc")) ev.arrival_soc = ej["arrival_soc"].get<double>();
            ev.target_soc = ej.value("target_soc", 1.0);
            ev.daily = ej.value("daily", true);
            cfg.evs.push_back(std::move(ev));
        }
    }

    cfg.validate();
    return cfg;
}

OracleInstance load_oracle_instance(const std::string& path) {
    const json root = load_json_file(path);
    OracleInstance inst;
    inst.horizon = static_cast<int>(require_number(root, "horizon", path));
    if (!root.contains("pricing"))
        throw ConfigError(path + ": missing 'pricing' section");
    inst.pricing = parse_pricing(root["pricing"], path + ": pricing");

    if (!root.contains("buildings") || !root["buildings"].is_array())
        throw ConfigError(path + ": missing 'buildings' array");
    for (const auto& bj : root["buildings"]) {
        OracleBuilding b;
        b.id = require_string(bj, "id", path + ": building");
        const std::string where = path + ": building '" + b.id + "'";
        if (!bj.contains("demand_kwh") || !bj["demand_kwh"].is_array())
            throw ConfigError(where + ": missing 'demand_kwh' array");
        b.demand_kwh = bj["demand_kwh"].get<std::vector<double>>();
        if (!bj.contains("generation_kwh") || !bj["generation_kwh"].is_array())
            throw ConfigError(where + ": missing 'generation_kwh' array");
        b.generation_kwh = bj["generation_kwh"].get<std::vector<double>>();
        if (!bj.contains("battery"))
            throw ConfigError(where + ": missing 'battery' section");
        b.battery = parse_battery(bj["battery"], where);
        b.initial_stored_kwh = bj["battery"].value("initial_stored_kwh", 0.0);
        if (!bj.contains("battery_levels_kw") || !bj["battery_levels_kw"].is_array())
            throw ConfigError(where + ": missing 'battery_levels_kw' array");
        b.battery_levels_kw = bj["battery_levels_kw"].get<std::vector<double>>();
        inst.buildings.push_back(std::move(b));
    }

    if (root.contains("evs")) {
        std::size_t index = 0;
        for (const auto& ej : root["evs"]) {
            OracleEv ev;
            ev.session.id = ej.value("id", "EV" + std::to_string(index + 1));
            const std::string where = path + ": EV '" + ev.session.id + "'";
            const std::string building = require_string(ej, "building", where);
            ev.building = SIZE_MAX;
            for (std::size_t j = 0; j < inst.buildings.size(); ++j)
                if (inst.buildings[j].id == building) ev.building = j;
            if (ev.building == SIZE_MAX)
                throw ConfigError(where + ": unknown building '" + building + "'");
            ev.session.arrival_hour = static_cast<long>(require_number(ej, "arrival_hour", where));
            ev.session.duration_hours =
                static_cast<long>(require_number(ej, "duration_hours", where));
            ev.session.capacity_kwh = require_number(ej, "capacity_kwh", where);
            ev.session.max_rate_kw = require_number(ej, "max_rate_kw", where);
            ev.session.arrival_soc = require_number(ej, "arrival_soc", where);
            ev.session.target_soc = ej.value("target_soc", 1.0);
            ev.session.allow_v2b = ej.value("allow_v2b", false);
            if (!ej.contains("rate_levels_kw") || !ej["rate_levels_kw"].is_array())
                throw ConfigError(where + ": missing 'rate_levels_kw' array");
            ev.rate_levels_kw = ej["rate_levels_kw"].get<std::vector<double>>();
            inst.evs.push_back(std::move(ev));
            ++index;
        }
    }

    inst.validate();
    return inst;
}

} // namespace cluster_dispatch
