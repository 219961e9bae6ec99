#pragma once

#include <chrono>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "carbonsnap/model.hpp"
#include "carbonsnap/time.hpp"

namespace carbonsnap {

// Measurement channels, declared most-trusted first. Each step down the
// chain sees less of the electrical path (facility meter > rack PDU > BMC
// > CPU package counters), so it reads lower.
enum class MeasurementSource { facility, pdu, ipmi, turbostat };

std::string_view to_string(MeasurementSource source);
// Case-insensitive; throws ValidationError for unknown names.
MeasurementSource parse_measurement_source(std::string_view text);
// 0 is most trusted.
int trust_rank(MeasurementSource source);

struct EnergyMeasurement {
    std::string site;
    MeasurementSource source = MeasurementSource::facility;
    SnapshotPeriod period;
    EnergyQuantity energy;
    std::int64_t nodes_covered = 1;

    friend bool operator==(const EnergyMeasurement&, const EnergyMeasurement&) = default;
};

// Reads the measurements CSV:
//   site,source,period_start,period_end,kwh,nodes
// Errors carry `origin`, the line and the column.
std::vector<EnergyMeasurement> parse_measurements(std::istream& in, const std::string& origin = "<measurements>");

// Writes the same CSV format back out.
void write_measurements(std::ostream& out, const std::vector<EnergyMeasurement>& measurements);

struct PowerSample {
    Timestamp time;
    Decimal watts;

    friend bool operator==(const PowerSample&, const PowerSample&) = default;
};

/// Time-ordered power readings for one node.
class PowerSampleSeries {
public:
    // Throws ValidationError if timestamps are not strictly increasing or a
    // reading is negative.
    PowerSampleSeries(std::string site, std::string node_id, std::vector<PowerSample> samples);

    const std::string& site() const noexcept { return site_; }
    const std::string& node_id() const noexcept { return node_id_; }
    const std::vector<PowerSample>& samples() const noexcept { return samples_; }

private:
    std::string site_;
    std::string node_id_;
    std::vector<PowerSample> samples_;
};

// Reads the samples CSV:
//   site,node_id,timestamp,watts
// Rows may arrive in any order; they are grouped per (site, node_id) and
// sorted by time. Duplicate timestamps for one node are rejected. Series
// come back ordered by (site, node_id).
std::vector<PowerSampleSeries> parse_samples(std::istream& in, const std::string& origin = "<samples>");

struct SampleGap {
    Timestamp from;
    Timestamp to;
};

struct IntegrationResult {
    EnergyQuantity energy;
    // Intervals wider than the gap threshold. They are still integrated.
    std::vector<SampleGap> gaps;
};

struct IntegrationOptions {
    // A gap is flagged when it exceeds this multiple of the median interval.
    Decimal gap_factor{10};
};

// Trapezoidal integral of power over time, in kWh:
//   sum over consecutive samples of (w_i + w_{i+1}) / 2 * dt_hours / 1000
// Throws ValidationError for fewer than two samples.
EnergyQuantity integrate_power(const PowerSampleSeries& series);
IntegrationResult integrate_power_checked(const PowerSampleSeries& series, const IntegrationOptions& options = {});

// Sums per-node integrals into one measurement per site. The period spans
// the earliest to latest sample at that site and nodes_covered counts the
// distinct nodes.
std::vector<EnergyMeasurement> measurements_from_samples(const std::vector<PowerSampleSeries>& series,
                                                         MeasurementSource source = MeasurementSource::ipmi);

struct ReconciliationReport {
    std::string site;
    EnergyMeasurement canonical;
    // Each supplied source's energy divided by the canonical energy.
    std::map<MeasurementSource, Decimal> ratios;

    // ratios[numerator] / ratios[denominator]; both sources must be present.
    Decimal cross_ratio(MeasurementSource numerator, MeasurementSource denominator) const;
};

// Picks the most-trusted measurement as canonical and reports every source
// relative to it. Energies are never modified.
// Throws ValidationError for empty input, mixed sites or periods, or a
// source given twice.
ReconciliationReport reconcile(const std::vector<EnergyMeasurement>& site_measurements);

// Groups by site (in first-appearance order) and reconciles each group.
std::vector<ReconciliationReport> reconcile_all(const std::vector<EnergyMeasurement>& measurements);

std::vector<EnergyMeasurement> canonical_measurements(const std::vector<ReconciliationReport>& reports);

// Multiplies every measurement of a listed source by its factor. This is
// the only way ratios turn into adjustments; nothing is scaled implicitly.
std::vector<EnergyMeasurement> apply_corrections(std::vector<EnergyMeasurement> measurements,
                                                 const std::map<MeasurementSource, Decimal>& factors);

// Exact sum of canonical site energies. Throws ValidationError when a site
// appears twice or periods differ.
EnergyQuantity snapshot_energy(const std::vector<EnergyMeasurement>& canonical);

// Directly metered facilities energy for a site (cooling, power
// distribution/UPS, wider facility). When present for a site it replaces the
// PUE estimate for that site.
enum class FacilitiesComponent { cooling, power, facility };

std::string_view to_string(FacilitiesComponent component);
FacilitiesComponent parse_facilities_component(std::string_view text);

struct FacilitiesMeasurement {
    std::string site;
    FacilitiesComponent component = FacilitiesComponent::cooling;
    SnapshotPeriod period;
    EnergyQuantity energy;

    friend bool operator==(const FacilitiesMeasurement&, const FacilitiesMeasurement&) = default;
};

// Reads `site,component,period_start,period_end,kwh`.
std::vector<FacilitiesMeasurement> parse_facilities(std::istream& in, const std::string& origin = "<facilities>");

}  // namespace carbonsnap
