#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cluster_dispatch/cluster_aggregate.hpp"
#include "cluster_dispatch/genetic.hpp"
#include "cluster_dispatch/pricing.hpp"
#include "cluster_dispatch/settlement.hpp"
#include "cluster_dispatch/storage_model.hpp"
#include "cluster_dispatch/time_series.hpp"

namespace cluster_dispatch {

// Slot duration; hourly throughout, sub-hourly input is rejected at load.
inline constexpr double kTauHours = 1.0;

struct BuildingSetup {
    std::string id;
    TimeSeries demand;     // kWh per slot, covering every simulated day
    TimeSeries generation; // kWh per slot, same span
    PVSpec pv;
    BatterySpec battery;
    double initial_stored_kwh = 0.0;
};

// A parking pattern; daily templates spawn one session per simulated day.
struct EvTemplate {
    std::string id;
    std::size_t building = 0;
    int arrival_hour = 0;   // hour of day, 0..23
    int duration_hours = 1; // may cross into the next day
    double capacity_kwh = 0.0;
    double max_rate_kw = 0.0;
    std::optional<double> arrival_soc; // drawn per day from the run seed when absent
    double target_soc = 1.0;
    bool daily = true;
};

struct ClusterConfig {
    std::vector<BuildingSetup> buildings;
    std::vector<EvTemplate> evs;
    PricingScheme pricing;
    GAParams ga;
    int horizon_hours = 24;
    std::uint64_t seed = 1;
    std::string currency = "EUR";
    bool allow_v2b = false;

    void validate() const;
    std::size_t building_index(const std::string& id) const;
};

enum class EvControlMode { Immediate, Optimized };
enum class SharingMode { Off, Full };

// Table-style scenario triple: S1 = individual control (immediate EV, no
// sharing), S2 = coordinated storage (immediate EV, full sharing), S3 = the
// developed control (optimized EV, full sharing).
struct ScenarioConfig {
    std::string id;
    EvControlMode ev_mode = EvControlMode::Immediate;
    SharingMode sharing = SharingMode::Off;

    static ScenarioConfig standard(const std::string& id);
};

// One EV's concrete stay on the simulation timeline. The arrival SOC is
// identical across scenarios: it depends only on the run seed, day and EV.
struct SessionInstance {
    EVSession session; // absolute hours
    std::size_t building = 0;
    std::vector<double> committed_rates_kw; // over the parking window
    int soc_redraws = 0;                    // infeasible uniform draws discarded

    double delivered_before_kwh(long absolute_hour) const;
};

std::vector<SessionInstance> instantiate_sessions(const ClusterConfig& cfg, int days);

struct DayOutput {
    int day = 0;
    EnergyFlowLedger ledger;
    DayReport report;
    std::vector<double> rep_rates_kw;       // committed aggregate battery rates (S3)
    std::vector<double> allocation_residual; // |sum_j u_j - u_r| per hour (S3)
    double clamped_target_kwh = 0.0;         // aggregate rate pulled back for allocatability
};

struct ScenarioRun {
    ScenarioConfig scenario;
    std::vector<DayOutput> days;
    std::vector<double> final_stored_kwh; // per building
    std::vector<SessionInstance> sessions;
};

// Day-ahead rolling control: each day is optimized on its own window with
// terminal battery states and in-progress EV sessions carried forward.
class ScenarioEngine {
public:
    ScenarioEngine(const ClusterConfig& cfg, const ScenarioConfig& scenario, int days);

    DayOutput run_day_ahead(int day); // days must be run in order
    ScenarioRun run_all();

    std::span<const double> stored_kwh() const { return stored_; }
    const std::vector<SessionInstance>& sessions() const { return sessions_; }

private:
    struct DayPlan {
        std::vector<std::vector<double>> battery_rates_kw; // [building][hour]
        std::vector<std::vector<double>> ev_load_kwh;      // [building][hour]
        std::vector<double> rep_rates_kw;
        double clamped_kwh = 0.0;
    };

    DayPlan plan_day_s1(int day, const std::vector<std::vector<double>>& ev_load);
    DayPlan plan_day_s2(int day, const std::vector<std::vector<double>>& ev_load);
    DayPlan plan_day_s3(int day);

    std::vector<std::vector<double>> fixed_ev_load(int day) const;
    TimeSeries day_slice(const TimeSeries& s, int day) const;

    const ClusterConfig cfg_;
    const ScenarioConfig scenario_;
    int days_;
    int next_day_ = 0;
    std::vector<double> stored_;
    std::vector<SessionInstance> sessions_;
};

ScenarioRun run_scenario(const ClusterConfig& cfg, const ScenarioConfig& scenario, int days);

} // namespace cluster_dispatch
