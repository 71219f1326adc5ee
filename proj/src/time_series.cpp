#include "cluster_dispatch/time_series.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cluster_dispatch/errors.hpp"

namespace cluster_dispatch {

std::string unit_name(Unit u) {
    switch (u) {
        case Unit::kWhPerSlot: return "kWh";
        case Unit::kW: return "kW";
        case Unit::WPerM2: return "W_per_m2";
    }
    return "?";
}

Unit unit_from_name(const std::string& name) {
    if (name == "kWh") return Unit::kWhPerSlot;
    if (name == "kW") return Unit::kW;
    if (name == "W_per_m2") return Unit::WPerM2;
    throw ConfigError("unknown unit tag '" + name + "' (expected kWh, kW or W_per_m2)");
}

EpochHour parse_hour_timestamp(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0;
    char sep = 0;
    int fields = std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &se);
    if (fields < 6 || (sep != 'T' && sep != ' '))
        throw ConfigError("invalid timestamp '" + text + "' (expected YYYY-MM-DDTHH:MM)");
    if (mi != 0 || (fields >= 7 && se != 0))
        throw ConfigError("timestamp '" + text + "' is not hour-aligned");
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(mo)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok() || h < 0 || h > 23)
        throw ConfigError("invalid calendar date/time in timestamp '" + text + "'");
    const auto days = std::chrono::sys_days{ymd}.time_since_epoch();
    return std::chrono::duration_cast<std::chrono::hours>(days).count() + h;
}

std::string format_hour_timestamp(EpochHour hour) {
    EpochHour days = hour / 24;
    int h = static_cast<int>(hour % 24);
    if (h < 0) {
        h += 24;
        days -= 1;
    }
    const std::chrono::sys_days sd{std::chrono::days{days}};
    const std::chrono::year_month_day ymd{sd};
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:00", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), h);
    return buf;
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double TimeSeries::sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

namespace {

double parse_value(const std::string& field, const std::string& origin, std::size_t row) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ConfigError(origin + ": row " + std::to_string(row) + ": non-numeric value '" + field + "'");
    if (!std::isfinite(v))
        throw ConfigError(origin + ": row " + std::to_string(row) + ": value is not finite");
    return v;
}

} // namespace

TimeSeries parse_profile(std::istream& in, Unit unit, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError(origin + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "timestamp,value")
        throw ConfigError(origin + ": expected header 'timestamp,value', got '" + line + "'");

    TimeSeries s;
    s.unit = unit;
    std::size_t row = 1;
    EpochHour prev = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError(origin + ": row " + std::to_string(row) + ": expected 'timestamp,value'");
        EpochHour t;
        try {
            t = parse_hour_timestamp(line.substr(0, comma));
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ": row " + std::to_string(row) + ": " + e.what());
        }
        const double v = parse_value(line.substr(comma + 1), origin, row);
        if (v < 0.0)
            throw ConfigError(origin + ": row " + std::to_string(row) + ": negative value " +
                              format_double(v) + " (demand/irradiance must be >= 0)");
        if (s.values.empty()) {
            s.start = t;
        } else if (t <= prev) {
            throw ConfigError(origin + ": row " + std::to_string(row) +
                              ": timestamps not strictly increasing at " + format_hour_timestamp(t));
        } else if (t != prev + 1) {
            throw ConfigError(origin + ": row " + std::to_string(row) + ": gap before " +
                              format_hour_timestamp(t) + " (missing " + format_hour_timestamp(prev + 1) + ")");
        }
        prev = t;
        s.values.push_back(v);
    }
    if (s.values.empty())
        throw ConfigError(origin + ": no data rows");
    return s;
}

TimeSeries load_profile(const std::string& path, Unit unit) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open profile file '" + path + "'");
    return parse_profile(in, unit, path);
}

std::string profile_to_csv(const TimeSeries& s) {
    std::string out = "timestamp,value\n";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        out += format_hour_timestamp(s.start + static_cast<EpochHour>(i));
        out += ',';
        out += format_double(s.values[i]);
        out += '\n';
    }
    return out;
}

void write_profile(const TimeSeries& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write profile file '" + path + "'");
    out << profile_to_csv(s);
}

TimeSeries slice(const TimeSeries& s, std::size_t offset_hours, std::size_t hours) {
    if (offset_hours + hours > s.values.size())
        throw ConfigError("slice [" + std::to_string(offset_hours) + ", " +
                          std::to_string(offset_hours + hours) + ") out of range for series of length " +
                          std::to_string(s.values.size()));
    TimeSeries out;
    out.start = s.start + static_cast<EpochHour>(offset_hours);
    out.unit = s.unit;
    out.values.assign(s.values.begin() + offset_hours, s.values.begin() + offset_hours + hours);
    return out;
}

TimeSeries slice_at(const TimeSeries& s, EpochHour start, std::size_t hours) {
    if (start < s.start)
        throw ConfigError("slice start " + format_hour_timestamp(start) + " precedes series start " +
                          format_hour_timestamp(s.start));
    return slice(s, static_cast<std::size_t>(start - s.start), hours);
}

} // namespace cluster_dispatch
