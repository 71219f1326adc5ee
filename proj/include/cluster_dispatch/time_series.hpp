#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cluster_dispatch {

enum class Unit { kWhPerSlot, kW, WPerM2 };

std::string unit_name(Unit u);
Unit unit_from_name(const std::string& name);

// Hours since the Unix epoch. All series are hour-aligned; sub-hourly input
// is rejected at load, never resampled.
using EpochHour = std::int64_t;

// Accepts "YYYY-MM-DD HH:MM[:SS]" or the ISO 'T' form, optional trailing 'Z'.
// Minutes and seconds must be zero.
EpochHour parse_hour_timestamp(const std::string& text);
std::string format_hour_timestamp(EpochHour hour); // YYYY-MM-DDTHH:00

// Hourly sequence of energy per slot (kWh) or power values with an explicit
// unit tag. At the fixed 1 h step kWh-per-slot and kW are numerically equal,
// but the tag is still enforced to prevent silent misuse.
struct TimeSeries {
    EpochHour start = 0;
    Unit unit = Unit::kWhPerSlot;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double sum() const;
};

// CSV ingestion: header "timestamp,value", strictly increasing hour-aligned
// timestamps, no gaps, finite non-negative values. Errors name the file and
// the 1-based row.
TimeSeries load_profile(const std::string& path, Unit unit);
TimeSeries parse_profile(std::istream& in, Unit unit, const std::string& origin);

// Shortest round-trip decimal output, so write + load reproduces the exact
// doubles.
std::string profile_to_csv(const TimeSeries& s);
void write_profile(const TimeSeries& s, const std::string& path);

TimeSeries slice(const TimeSeries& s, std::size_t offset_hours, std::size_t hours);
TimeSeries slice_at(const TimeSeries& s, EpochHour start, std::size_t hours);

// Locale-independent shortest representation of a double.
std::string format_double(double v);

} // namespace cluster_dispatch
