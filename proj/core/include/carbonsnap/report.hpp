#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "carbonsnap/embodied.hpp"
#include "carbonsnap/model.hpp"

namespace carbonsnap {

struct AxisPoint {
    std::string label;
    Decimal value;

    friend bool operator==(const AxisPoint&, const AxisPoint&) = default;
};

/// One dimension of the scenario matrix: labelled values in display order.
class ScenarioAxis {
public:
    // Empty axis; stands in for a matrix that was not requested.
    ScenarioAxis() = default;
    // Throws ValidationError for an empty axis or duplicate labels.
    ScenarioAxis(std::string name, std::vector<AxisPoint> points);

    const std::string& name() const noexcept { return name_; }
    const std::vector<AxisPoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    // Throws ValidationError if the label is absent.
    std::size_t index_of(std::string_view label) const;

    friend bool operator==(const ScenarioAxis&, const ScenarioAxis&) = default;

private:
    std::string name_;
    std::vector<AxisPoint> points_;
};

/// Energy the active matrix is built from. PUE scales only the IT energy
/// at sites without metered facilities energy; metered sites contribute
/// their IT energy plus the metered facilities energy instead.
struct ActiveEnergyBasis {
    EnergyQuantity nodes;
    EnergyQuantity network;
    // Part of nodes + network located at sites with metered facilities energy.
    EnergyQuantity metered_it;
    EnergyQuantity metered_facilities;

    EnergyQuantity it() const { return nodes + network; }
    friend bool operator==(const ActiveEnergyBasis&, const ActiveEnergyBasis&) = default;
};

struct ActiveMatrix {
    ScenarioAxis intensities;
    ScenarioAxis pues;
    // Carbon of the IT energy alone, one per intensity point.
    std::vector<CarbonQuantity> base;
    // [intensity][pue], facilities included.
    std::vector<std::vector<CarbonQuantity>> cells;

    const CarbonQuantity& at(std::string_view intensity, std::string_view pue) const;
    friend bool operator==(const ActiveMatrix&, const ActiveMatrix&) = default;
};

struct EmbodiedMatrix {
    ScenarioAxis estimates;  // kgCO2e per node
    ScenarioAxis lifespans;  // years
    std::int64_t node_count = 0;
    Decimal period_days;
    AmortizationPolicy policy;
    // [estimate][lifespan], per node per day.
    std::vector<std::vector<CarbonQuantity>> per_day;
    // [estimate][lifespan], whole fleet over the period.
    std::vector<std::vector<CarbonQuantity>> snapshot;

    const CarbonQuantity& snapshot_at(std::string_view estimate, std::string_view lifespan) const;
    const CarbonQuantity& per_day_at(std::string_view estimate, std::string_view lifespan) const;
    friend bool operator==(const EmbodiedMatrix&, const EmbodiedMatrix&) = default;
};

struct Totals {
    CarbonQuantity min;
    CarbonQuantity max;
    friend bool operator==(const Totals&, const Totals&) = default;
};

struct EquivalenceFactor {
    std::string name;
    Decimal kg_per_unit;
    std::string unit;
};

// Built-in: a representative jet flight emits 92 kgCO2e per passenger-hour.
EquivalenceFactor flight_factor();

struct Equivalent {
    std::string name;
    Decimal quantity;
    std::string unit;
    friend bool operator==(const Equivalent&, const Equivalent&) = default;
};

struct Provenance {
    std::map<std::string, std::string> inputs;
    std::string tool_version;
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ScenarioReport {
    ActiveEnergyBasis energy;
    ActiveMatrix active;
    EmbodiedMatrix embodied;
    Totals totals;
    std::vector<Equivalent> equivalents;
    Provenance provenance;

    EnergyQuantity base_energy() const { return energy.it(); }
    friend bool operator==(const ScenarioReport&, const ScenarioReport&) = default;
};

// Every cell is apply_pue(active_carbon(energy, intensity), pue), unrounded.
ActiveMatrix build_active_matrix(const EnergyQuantity& energy, const ScenarioAxis& intensities,
                                 const ScenarioAxis& pues);
ActiveMatrix build_active_matrix(const ActiveEnergyBasis& basis, const ScenarioAxis& intensities,
                                 const ScenarioAxis& pues);

EmbodiedMatrix build_embodied_matrix(const ScenarioAxis& estimates, const ScenarioAxis& lifespans,
                                     std::int64_t node_count, const Decimal& period_days,
                                     const AmortizationPolicy& policy = {});

// min = min(active cells) + min(snapshot cells), likewise for max. An empty
// matrix contributes zero.
Totals compute_totals(const ActiveMatrix& active, const EmbodiedMatrix& embodied);

// kgCO2e / 92, in passenger-hours.
Decimal flight_equivalent(const CarbonQuantity& carbon);
Decimal equivalent(const CarbonQuantity& carbon, const EquivalenceFactor& factor);

// Empty estimate or lifespan axes leave the embodied matrix empty.
ScenarioReport build_report(const ActiveEnergyBasis& energy, const ScenarioAxis& intensities,
                            const ScenarioAxis& pues, const ScenarioAxis& estimates,
                            const ScenarioAxis& lifespans, std::int64_t node_count,
                            const Decimal& period_days, const AmortizationPolicy& policy,
                            const std::vector<EquivalenceFactor>& factors, Provenance provenance);

enum class Rounding { half_up, truncate };

struct MarkdownOptions {
    // Presentation of the embodied snapshot column.
    Rounding embodied_snapshot = Rounding::half_up;
};

// Keys sorted, every quantity an exact decimal string (or p/q when the value
// does not terminate), two-space indent, trailing newline.
std::string render_json(const ScenarioReport& report);
std::string render_markdown(const ScenarioReport& report, const MarkdownOptions& options = {});

// Inverse of render_json. Throws ParseError on malformed documents.
ScenarioReport parse_report_json(std::string_view text, const std::string& origin = "<report>");

// Integer kg text for a carbon value under a rounding mode.
std::string format_kg(const CarbonQuantity& carbon, Rounding rounding = Rounding::half_up, int places = 0);

}  // namespace carbonsnap
