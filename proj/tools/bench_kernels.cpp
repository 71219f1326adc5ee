// Compares the serial reference implementations of the two hot kernels
// against their OpenMP versions: GA population evaluation and exhaustive
// grid enumeration. Both pairs must produce identical results; this tool
// reports the wall-clock ratio.

#include <chrono>
#include <cstdio>
#include <vector>

#include "cluster_dispatch/cluster_aggregate.hpp"
#include "cluster_dispatch/horizon_optimizer.hpp"
#include "cluster_dispatch/oracle.hpp"
#include "cluster_dispatch/parallel.hpp"
#include "cluster_dispatch/rng.hpp"
#include "cluster_dispatch/synthetic.hpp"

namespace cd = cluster_dispatch;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cd::RepresentativeBuilding bench_rep() {
    cd::BuildingModel b;
    b.id = "bench";
    b.demand = cd::synthetic_demand(1, 360.0, 11, 0);
    const cd::TimeSeries irr = cd::synthetic_irradiance(1, 11, 0);
    b.generation.start = 0;
    b.generation.unit = cd::Unit::kWhPerSlot;
    for (double v : irr.values) b.generation.values.push_back(v * 0.081); // 600 m2 at 13.5%
    b.battery = {60.0, 18.0};
    return cd::aggregate({b});
}

void bench_ga(const cd::RepresentativeBuilding& rep) {
    cd::PricingScheme pricing;
    cd::EVSession ev{"bench-ev", 8, 9, 53.0, 10.0, 0.3, 1.0, false};
    cd::GAParams params;
    params.population = 200;
    params.generations = 400;
    params.seed = 99;

    params.eval_mode = cd::EvalMode::Serial;
    auto t0 = std::chrono::steady_clock::now();
    const cd::HorizonPlan serial = cd::optimize_horizon(rep, {ev}, pricing, params);
    const double t_serial = seconds_since(t0);

    params.eval_mode = cd::EvalMode::Parallel;
    t0 = std::chrono::steady_clock::now();
    const cd::HorizonPlan parallel = cd::optimize_horizon(rep, {ev}, pricing, params);
    const double t_parallel = seconds_since(t0);

    bool identical = serial.battery_rates_kw == parallel.battery_rates_kw &&
                     serial.ev_rates_kw == parallel.ev_rates_kw;
    std::printf("GA horizon search   serial %7.3f s   openmp %7.3f s   speedup %4.2fx   %s\n",
                t_serial, t_parallel, t_serial / t_parallel,
                identical ? "results identical" : "RESULTS DIFFER");
}

void bench_oracle() {
    cd::OracleInstance inst;
    inst.horizon = 6;
    cd::OracleBuilding b;
    b.id = "B1";
    b.demand_kwh = {4, 2, 9, 3, 6, 8};
    b.generation_kwh = {0, 7, 2, 8, 1, 0};
    b.battery = {12.0, 6.0};
    b.battery_levels_kw = {-6, -4.5, -3, -1.5, 0, 1.5, 3, 4.5, 6};
    inst.buildings.push_back(b);
    b.id = "B2";
    b.demand_kwh = {3, 5, 2, 7, 4, 6};
    b.generation_kwh = {1, 4, 6, 2, 5, 0};
    inst.buildings.push_back(b);
    cd::OracleEv ev;
    ev.session = {"EV", 1, 4, 8.0, 4.0, 0.0, 1.0, false};
    ev.building = 0;
    ev.rate_levels_kw = {0, 2, 4};
    inst.evs.push_back(ev);

    auto t0 = std::chrono::steady_clock::now();
    const cd::OraclePlan serial = cd::brute_force_optimal(inst, cd::ScenarioKind::S3,
                                                          cd::EvalMode::Serial);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const cd::OraclePlan parallel = cd::brute_force_optimal(inst, cd::ScenarioKind::S3,
                                                            cd::EvalMode::Parallel);
    const double t_parallel = seconds_since(t0);

    const bool identical = serial.cost == parallel.cost &&
                           serial.battery_rates_kw == parallel.battery_rates_kw &&
                           serial.ev_rates_kw == parallel.ev_rates_kw;
    std::printf("oracle enumeration  serial %7.3f s   openmp %7.3f s   speedup %4.2fx   %s\n",
                t_serial, t_parallel, t_serial / t_parallel,
                identical ? "results identical" : "RESULTS DIFFER");
}

} // namespace

int main() {
    cd::apply_thread_cap();
    std::printf("threads available: %d\n", cd::max_threads());
    const cd::RepresentativeBuilding rep = bench_rep();
    bench_ga(rep);
    bench_oracle();
    return 0;
}
