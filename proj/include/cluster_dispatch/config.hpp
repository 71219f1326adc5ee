#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cluster_dispatch/oracle.hpp"
#include "cluster_dispatch/scenario_engine.hpp"

namespace cluster_dispatch {

// Loads the cluster description: building list with profile paths, PV and
// battery specs, EV sessions, prices, GA settings. Relative profile paths
// resolve against the config file's directory. Generation is computed from
// the irradiance profile through each building's PV spec at load time.
ClusterConfig load_cluster_config(const std::string& path);

// Desk-scale instance with inline demand/generation arrays and explicit
// rate grids, as consumed by the oracle subcommand and the test fixtures.
OracleInstance load_oracle_instance(const std::string& path);

struct RunManifest {
    std::string config_path;
    std::vector<std::string> scenarios; // subset of {S1, S2, S3}
    int days = 1;
    std::optional<std::uint64_t> seed;  // overrides the config seed
    std::string out_dir = "out";
    bool emit_json = true;
    bool emit_csv = false;
    bool emit_plotdata = false;
    bool allow_v2b = false;
    bool no_timestamp = false;
};

} // namespace cluster_dispatch
