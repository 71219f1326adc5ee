#pragma once

#include <stdexcept>
#include <string>

namespace cluster_dispatch {

// Malformed inputs: profiles, config files, CLI arguments.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A schedule or allocation cannot satisfy the hard constraints.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cluster_dispatch
