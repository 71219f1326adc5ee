// Regenerates the bundled synthetic week: three demand profiles sized for
// multifamily buildings plus one shared irradiance trace. Deterministic for
// a given seed.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cluster_dispatch/synthetic.hpp"
#include "cluster_dispatch/time_series.hpp"

namespace cd = cluster_dispatch;

int main(int argc, char** argv) {
    CLI::App app{"Generate the bundled synthetic demand and irradiance profiles"};
    std::string out_dir = "data/profiles";
    int days = 8;
    std::uint64_t seed = 7;
    std::string start = "2022-06-20T00:00";
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--days", days, "days to generate")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--start", start, "first hour (ISO-8601)");
    CLI11_PARSE(app, argc, argv);

    try {
        const cd::EpochHour t0 = cd::parse_hour_timestamp(start);
        std::filesystem::create_directories(out_dir);
        const struct {
            const char* name;
            double daily_kwh;
        } buildings[] = {{"demand_A.csv", 105.0}, {"demand_B.csv", 115.0}, {"demand_C.csv", 125.0}};
        std::uint64_t sub = 0;
        for (const auto& b : buildings) {
            const cd::TimeSeries demand = cd::synthetic_demand(days, b.daily_kwh, seed + sub, t0);
            cd::write_profile(demand, out_dir + "/" + b.name);
            ++sub;
        }
        const cd::TimeSeries irr = cd::synthetic_irradiance(days, seed, t0);
        cd::write_profile(irr, out_dir + "/irradiance.csv");
        std::cout << "wrote 3 demand profiles and irradiance.csv (" << days << " days, seed "
                  << seed << ") to " << out_dir << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
