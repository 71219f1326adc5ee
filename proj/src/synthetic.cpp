#include "cluster_dispatch/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cluster_dispatch/rng.hpp"

namespace cluster_dispatch {

namespace {

// Fractions of the daily total per hour of day; double hump with the evening
// peak dominating, summing to 1.
constexpr std::array<double, 24> kDemandShape = {
    0.022, 0.020, 0.019, 0.019, 0.021, 0.028, 0.048, 0.062, 0.055, 0.040, 0.036, 0.038,
    0.040, 0.037, 0.035, 0.038, 0.047, 0.062, 0.075, 0.078, 0.066, 0.052, 0.036, 0.026};

// Day-to-day sky condition, first day noticeably duller. Cycles for longer
// spans.
constexpr std::array<double, 8> kSkyFactor = {0.62, 0.88, 0.92, 0.97, 0.83, 1.00, 0.90, 0.78};

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

} // namespace

TimeSeries synthetic_demand(int days, double daily_kwh, std::uint64_t seed, EpochHour start) {
    Rng rng(derive_seed(seed, 0xDE3A));
    TimeSeries s;
    s.start = start;
    s.unit = Unit::kWhPerSlot;
    s.values.reserve(static_cast<std::size_t>(days) * 24);
    for (int d = 0; d < days; ++d) {
        for (int h = 0; h < 24; ++h) {
            const double noise = std::clamp(1.0 + 0.18 * rng.normal(), 0.55, 1.60);
            s.values.push_back(round3(daily_kwh * kDemandShape[static_cast<std::size_t>(h)] * noise));
        }
    }
    return s;
}

TimeSeries synthetic_irradiance(int days, std::uint64_t seed, EpochHour start) {
    Rng rng(derive_seed(seed, 0x1A8D));
    TimeSeries s;
    s.start = start;
    s.unit = Unit::WPerM2;
    s.values.reserve(static_cast<std::size_t>(days) * 24);
    constexpr double peak_w_per_m2 = 780.0;
    constexpr double sunrise = 6.5;
    constexpr double sunset = 20.5;
    for (int d = 0; d < days; ++d) {
        const double sky = kSkyFactor[static_cast<std::size_t>(d % 8)];
        for (int h = 0; h < 24; ++h) {
            const double mid = h + 0.5;
            double v = 0.0;
            if (mid > sunrise && mid < sunset) {
                const double phase = (mid - sunrise) / (sunset - sunrise);
                const double bell = std::pow(std::sin(phase * 3.14159265358979323846), 3.0);
                const double noise = std::clamp(1.0 + 0.05 * rng.normal(), 0.70, 1.15);
                v = peak_w_per_m2 * sky * bell * noise;
            }
            s.values.push_back(round3(v));
        }
    }
    return s;
}

} // namespace cluster_dispatch
