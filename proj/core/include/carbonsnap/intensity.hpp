#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "carbonsnap/model.hpp"
#include "carbonsnap/time.hpp"

namespace carbonsnap {

struct IntensityScenario {
    std::string name;
    CarbonIntensity intensity;
};

/// Named scalar intensities. Ships Low = 50, Medium = 175 and High = 300
/// gCO2e/kWh; user scenarios can be added but may not replace those.
class ScenarioRegistry {
public:
    ScenarioRegistry();

    // Throws ValidationError if `name` is already registered.
    void add(std::string name, CarbonIntensity intensity);

    // Throws ValidationError listing registered names on a miss.
    const CarbonIntensity& lookup(std::string_view name) const;
    bool contains(std::string_view name) const;
    static bool is_builtin(std::string_view name);

    // Registration order: built-ins first.
    const std::vector<IntensityScenario>& scenarios() const noexcept { return scenarios_; }

private:
    std::vector<IntensityScenario> scenarios_;
};

// Looks up a built-in scenario.
CarbonIntensity scenario(std::string_view name);

// Which API field supplied a period's value.
enum class IntensityField { actual, forecast };

std::string_view to_string(IntensityField field);

struct IntensityPeriod {
    Timestamp from;
    Timestamp to;
    CarbonIntensity intensity;
    IntensityField field = IntensityField::actual;
    // The API's qualitative band ("low", "moderate", ...), kept verbatim.
    std::optional<std::string> index;

    friend bool operator==(const IntensityPeriod&, const IntensityPeriod&) = default;
};

/// Ordered, non-overlapping intensity periods. Gaps between periods are
/// allowed; `time_weighted_carbon` reports them if energy falls inside one.
class IntensitySeries {
public:
    IntensitySeries() = default;
    // Sorts by start time, then throws ValidationError if any period has
    // from >= to or overlaps its successor.
    explicit IntensitySeries(std::vector<IntensityPeriod> periods);

    const std::vector<IntensityPeriod>& periods() const noexcept { return periods_; }
    bool empty() const noexcept { return periods_.empty(); }
    std::size_t size() const noexcept { return periods_.size(); }

    // Single-period series with a constant value over [from, to).
    static IntensitySeries constant(const SnapshotPeriod& span, const CarbonIntensity& value);

    friend bool operator==(const IntensitySeries&, const IntensitySeries&) = default;

private:
    std::vector<IntensityPeriod> periods_;
};

struct IntensityStats {
    CarbonIntensity min;
    CarbonIntensity max;
    // Time-weighted over covered periods.
    Decimal mean;
    std::size_t periods = 0;
};

// Throws ValidationError for an empty series.
IntensityStats summarize(const IntensitySeries& series);

using EnergyProfile = std::vector<std::pair<SnapshotPeriod, EnergyQuantity>>;

// Sum over profile entries of energy x intensity, where an entry spanning
// several series periods is split pro rata by time (uniform power within
// the entry). Throws ValidationError naming the first uncovered interval.
CarbonQuantity time_weighted_carbon(const EnergyProfile& profile, const IntensitySeries& series);

// Reads the national intensity API body:
//   {"data": [{"from": ..., "to": ..., "intensity": {"forecast": n, "actual": n|null, "index": s}}]}
// `actual` is preferred; `forecast` fills in when `actual` is null or absent.
// Malformed input throws ParseError whose message includes an excerpt of
// the payload.
IntensitySeries parse_intensity_json(std::string_view body, const std::string& origin = "<intensity>");

// Writes the same shape, with the value under whichever field supplied it.
std::string intensity_to_json(const IntensitySeries& series);

// `from,to,intensity_g_per_kwh,field` rows for external plotting.
std::string intensity_to_csv(const IntensitySeries& series);

}  // namespace carbonsnap
