#include "cluster_dispatch/pricing.hpp"

#include <string>

#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/time_series.hpp"

namespace cluster_dispatch {

void PricingScheme::validate() const {
    if (!(0.0 <= sell && sell <= cluster && cluster <= buy))
        throw ConfigError("prices must satisfy 0 <= sell <= cluster <= buy, got sell=" +
                          format_double(sell) + " cluster=" + format_double(cluster) +
                          " buy=" + format_double(buy));
}

} // namespace cluster_dispatch
