#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "carbonsnap/embodied.hpp"
#include "carbonsnap/report.hpp"
#include "carbonsnap/telemetry.hpp"

namespace carbonsnap::cli {

enum class IntensityMode { scenario, series, api };

std::string_view to_string(IntensityMode mode);
IntensityMode parse_intensity_mode(std::string_view text);

struct IntensityConfig {
    IntensityMode mode = IntensityMode::scenario;
    // scenario mode: registry names, in axis order
    std::vector<std::string> scenarios{"Low", "Medium", "High"};
    // scenario mode: user-defined scenarios added to the registry
    std::vector<AxisPoint> custom;
    // series mode
    std::optional<std::filesystem::path> series_path;
    // api mode
    std::optional<std::string> endpoint;
    std::optional<std::filesystem::path> cache_dir;
};

enum class OutputFormat { json, markdown };

struct OutputConfig {
    OutputFormat format = OutputFormat::json;
    std::string path = "-";
    Rounding embodied_rounding = Rounding::half_up;
};

/// Everything one `report` run needs. Relative paths resolve against the
/// directory holding the config file.
struct RunConfig {
    std::optional<std::filesystem::path> inventory;
    std::optional<std::filesystem::path> measurements;
    std::optional<std::filesystem::path> samples;
    std::optional<std::filesystem::path> facilities;
    MeasurementSource samples_source = MeasurementSource::ipmi;
    std::map<MeasurementSource, Decimal> corrections;

    // Pins the IT energy instead of deriving it from measurements.
    std::optional<Decimal> base_energy_kwh;
    std::optional<SnapshotPeriod> period;

    IntensityConfig intensity;
    std::vector<AxisPoint> pue_axis{{"Low", Decimal::parse("1.1")},
                                    {"Medium", Decimal::parse("1.3")},
                                    {"High", Decimal::parse("1.5")}};
    std::vector<AxisPoint> embodied_estimates;
    std::vector<AxisPoint> lifespans;
    std::optional<std::int64_t> node_count;
    AmortizationPolicy amortization;
    std::vector<EquivalenceFactor> equivalents;

    OutputConfig output;
    bool paper_compat = false;
    // Provenance label for the config source ("-" when none).
    std::string source = "-";
};

// Parses the JSON config. Throws ParseError / ValidationError.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir,
                       const std::string& origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

// Pins the published-table constants: 19380 kWh, intensities 50/175/300,
// PUE 1.1/1.3/1.6, estimates 400/1100 kg, lifespans 3..7 years, 2400
// servers, 24 h, 365.25 days per year, truncated embodied snapshot cells.
void apply_paper_compat(RunConfig& config);

// Checks invariants that span keys: one intensity mode with only its own
// keys, referenced files exist, axes are valid.
void validate_config(const RunConfig& config);

// "label=value" or a bare value (label = the value's text).
AxisPoint parse_axis_point(const std::string& text);

}  // namespace carbonsnap::cli
