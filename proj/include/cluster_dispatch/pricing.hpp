#pragma once

namespace cluster_dispatch {

// Three-tier tariff. The ordering sell <= cluster <= buy keeps the incentive
// to trade inside the cluster: a seller earns more than the feed-in tariff
// and a buyer pays less than the grid price.
struct PricingScheme {
    double buy = 0.16;     // grid purchase, currency/kWh
    double sell = 0.05;    // feed-in tariff, currency/kWh
    double cluster = 0.10; // intra-cluster trade, currency/kWh

    void validate() const;
};

} // namespace cluster_dispatch
