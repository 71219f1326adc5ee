#include "cluster_dispatch/cluster_aggregate.hpp"

#include "cluster_dispatch/errors.hpp"

namespace cluster_dispatch {

RepresentativeBuilding aggregate(const std::vector<BuildingModel>& buildings) {
    if (buildings.empty())
        throw ConfigError("cannot aggregate an empty building list");
    const auto& first = buildings.front();
    RepresentativeBuilding rep;
    rep.demand = first.demand;
    rep.generation = first.generation;
    rep.capacity_kwh = first.battery.capacity_kwh;
    rep.max_rate_kw = first.battery.max_rate_kw;
    rep.stored_kwh = first.stored_kwh;
    for (std::size_t b = 1; b < buildings.size(); ++b) {
        const auto& bd = buildings[b];
        if (bd.demand.size() != rep.demand.size() || bd.demand.start != rep.demand.start ||
            bd.generation.size() != rep.generation.size() ||
            bd.generation.start != rep.generation.start)
            throw ConfigError("building '" + bd.id + "' horizon is not aligned with building '" +
                              first.id + "'");
        for (std::size_t i = 0; i < rep.demand.size(); ++i)
            rep.demand.values[i] += bd.demand.values[i];
        for (std::size_t i = 0; i < rep.generation.size(); ++i)
            rep.generation.values[i] += bd.generation.values[i];
        rep.capacity_kwh += bd.battery.capacity_kwh;
        rep.max_rate_kw += bd.battery.max_rate_kw;
        rep.stored_kwh += bd.stored_kwh;
    }
    if (rep.demand.size() != rep.generation.size())
        throw ConfigError("demand and generation series must cover the same horizon");
    return rep;
}

} // namespace cluster_dispatch
