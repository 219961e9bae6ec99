#include "carbonsnap/telemetry.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "carbonsnap/error.hpp"
#include "csv.hpp"

namespace carbonsnap {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

Decimal parse_decimal_field(const csv::Reader& reader, const std::vector<std::string>& row,
                            const std::string& column) {
    const std::string& text = row[reader.column(column)];
    try {
        return Decimal::parse(text);
    } catch (const ParseError&) {
        reader.fail(column, "not a decimal number: '" + text + "'");
    }
}

Timestamp parse_time_field(const csv::Reader& reader, const std::vector<std::string>& row,
                           const std::string& column) {
    const std::string& text = row[reader.column(column)];
    try {
        return parse_timestamp(text);
    } catch (const ParseError& e) {
        std::string why = e.what();
        if (auto pos = why.find(": "); pos != std::string::npos) why = why.substr(pos + 2);
        reader.fail(column, why);
    }
}

std::int64_t parse_count_field(const csv::Reader& reader, const std::vector<std::string>& row,
                               const std::string& column) {
    Decimal value = parse_decimal_field(reader, row, column);
    if (!value.is_integer() || value < Decimal(1) || value > Decimal(INT64_MAX))
        reader.fail(column, "expected a positive integer, got '" + row[reader.column(column)] + "'");
    return value.raw().convert_to<std::int64_t>();
}

SnapshotPeriod parse_period_fields(const csv::Reader& reader, const std::vector<std::string>& row) {
    const Timestamp start = parse_time_field(reader, row, "period_start");
    const Timestamp end = parse_time_field(reader, row, "period_end");
    if (!(end > start)) reader.fail("period_end", "period must end after it starts");
    return SnapshotPeriod(start, end);
}

EnergyQuantity parse_energy_field(const csv::Reader& reader, const std::vector<std::string>& row) {
    Decimal kwh = parse_decimal_field(reader, row, "kwh");
    if (kwh.is_negative()) reader.fail("kwh", "energy must be non-negative, got " + kwh.to_string());
    return EnergyQuantity(kwh);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string_view to_string(MeasurementSource source) {
    switch (source) {
        case MeasurementSource::facility: return "facility";
        case MeasurementSource::pdu: return "pdu";
        case MeasurementSource::ipmi: return "ipmi";
        case MeasurementSource::turbostat: return "turbostat";
    }
    return "facility";
}

MeasurementSource parse_measurement_source(std::string_view text) {
    const std::string s = lower(text);
    if (s == "facility") return MeasurementSource::facility;
    if (s == "pdu") return MeasurementSource::pdu;
    if (s == "ipmi") return MeasurementSource::ipmi;
    if (s == "turbostat") return MeasurementSource::turbostat;
    throw ValidationError("unknown measurement source '" + std::string(text) +
                          "' (expected facility, pdu, ipmi or turbostat)");
}

int trust_rank(MeasurementSource source) { return static_cast<int>(source); }

std::vector<EnergyMeasurement> parse_measurements(std::istream& in, const std::string& origin) {
    csv::Reader reader(in, origin);
    reader.read_header({"site", "source", "period_start", "period_end", "kwh", "nodes"});
    std::vector<EnergyMeasurement> out;
    std::vector<std::string> row;
    while (reader.next(row)) {
        const std::string& site = row[reader.column("site")];
        if (site.empty()) reader.fail("site", "site must not be empty");
        MeasurementSource source{};
        try {
            source = parse_measurement_source(row[reader.column("source")]);
        } catch (const ValidationError& e) {
            reader.fail("source", e.what());
        }
        SnapshotPeriod period = parse_period_fields(reader, row);
        EnergyQuantity energy = parse_energy_field(reader, row);
        const std::int64_t nodes = parse_count_field(reader, row, "nodes");
        out.push_back(EnergyMeasurement{site, source, period, energy, nodes});
    }
    return out;
}

void write_measurements(std::ostream& out, const std::vector<EnergyMeasurement>& measurements) {
    out << "site,source,period_start,period_end,kwh,nodes\n";
    for (const auto& m : measurements) {
        out << csv_escape(m.site) << ',' << to_string(m.source) << ',' << format_timestamp(m.period.start())
            << ',' << format_timestamp(m.period.end()) << ',' << m.energy.kwh().to_string() << ','
            << m.nodes_covered << '\n';
    }
}

PowerSampleSeries::PowerSampleSeries(std::string site, std::string node_id, std::vector<PowerSample> samples)
    : site_(std::move(site)), node_id_(std::move(node_id)), samples_(std::move(samples)) {
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (samples_[i].watts.is_negative())
            throw ValidationError("node '" + node_id_ + "': negative power reading at " +
                                  format_timestamp(samples_[i].time));
        if (i > 0 && !(samples_[i].time > samples_[i - 1].time))
            throw ValidationError("node '" + node_id_ + "': timestamps must be strictly increasing at " +
                                  format_timestamp(samples_[i].time));
    }
}

std::vector<PowerSampleSeries> parse_samples(std::istream& in, const std::string& origin) {
    csv::Reader reader(in, origin);
    reader.read_header({"site", "node_id", "timestamp", "watts"});

    struct Row {
        PowerSample sample;
        std::size_t line;
    };
    std::map<std::pair<std::string, std::string>, std::vector<Row>> groups;
    std::vector<std::string> row;
    while (reader.next(row)) {
        const std::string& site = row[reader.column("site")];
        const std::string& node = row[reader.column("node_id")];
        if (site.empty()) reader.fail("site", "site must not be empty");
        if (node.empty()) reader.fail("node_id", "node_id must not be empty");
        const Timestamp t = parse_time_field(reader, row, "timestamp");
        const Decimal watts = parse_decimal_field(reader, row, "watts");
        if (watts.is_negative()) reader.fail("watts", "power must be non-negative, got " + watts.to_string());
        groups[{site, node}].push_back(Row{PowerSample{t, watts}, reader.line()});
    }

    std::vector<PowerSampleSeries> out;
    out.reserve(groups.size());
    for (auto& [key, rows] : groups) {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const Row& a, const Row& b) { return a.sample.time < b.sample.time; });
        std::vector<PowerSample> samples;
        samples.reserve(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i > 0 && rows[i].sample.time == rows[i - 1].sample.time)
                throw ParseError(origin, rows[i].line, reader.column_number("timestamp"),
                                 "duplicate timestamp " + format_timestamp(rows[i].sample.time) + " for node '" +
                                     key.second + "' (first seen on line " + std::to_string(rows[i - 1].line) +
                                     ")");
            samples.push_back(rows[i].sample);
        }
        out.emplace_back(key.first, key.second, std::move(samples));
    }
    return out;
}

IntegrationResult integrate_power_checked(const PowerSampleSeries& series, const IntegrationOptions& options) {
    const auto& s = series.samples();
    if (s.size() < 2)
        throw ValidationError("node '" + series.node_id() + "': at least two samples are needed to integrate power");

    // watt-milliseconds, doubled (trapezoid numerator before halving)
    Decimal doubled_watt_ms;
    std::vector<std::chrono::milliseconds> intervals;
    intervals.reserve(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) {
        const auto dt = s[i].time - s[i - 1].time;
        intervals.push_back(dt);
        doubled_watt_ms += (s[i - 1].watts + s[i].watts) * Decimal(dt.count());
    }
    // Wh = W*ms / 3.6e6 ; kWh = Wh / 1000 ; halve for the trapezoid
    const Decimal kwh = doubled_watt_ms / Decimal(2LL * 3'600'000LL * 1000LL);

    IntegrationResult result{EnergyQuantity(kwh), {}};

    std::vector<std::chrono::milliseconds> sorted = intervals;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const Decimal median = n % 2 == 1 ? Decimal(sorted[n / 2].count())
                                      : Decimal(sorted[n / 2 - 1].count() + sorted[n / 2].count()) / Decimal(2);
    const Decimal threshold = median * options.gap_factor;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (Decimal(intervals[i].count()) > threshold) result.gaps.push_back(SampleGap{s[i].time, s[i + 1].time});
    }
    return result;
}

EnergyQuantity integrate_power(const PowerSampleSeries& series) { return integrate_power_checked(series).energy; }

std::vector<EnergyMeasurement> measurements_from_samples(const std::vector<PowerSampleSeries>& series,
                                                         MeasurementSource source) {
    struct Acc {
        EnergyQuantity energy;
        Timestamp start = Timestamp::max();
        Timestamp end = Timestamp::min();
        std::set<std::string> nodes;
    };
    std::vector<std::string> order;
    std::map<std::string, Acc> per_site;
    for (const auto& s : series) {
        auto [it, inserted] = per_site.try_emplace(s.site());
        if (inserted) order.push_back(s.site());
        Acc& acc = it->second;
        acc.energy += integrate_power(s);
        acc.start = std::min(acc.start, s.samples().front().time);
        acc.end = std::max(acc.end, s.samples().back().time);
        acc.nodes.insert(s.node_id());
    }
    std::vector<EnergyMeasurement> out;
    for (const auto& site : order) {
        const Acc& acc = per_site.at(site);
        out.push_back(EnergyMeasurement{site, source, SnapshotPeriod(acc.start, acc.end), acc.energy,
                                        static_cast<std::int64_t>(acc.nodes.size())});
    }
    return out;
}

Decimal ReconciliationReport::cross_ratio(MeasurementSource numerator, MeasurementSource denominator) const {
    auto n = ratios.find(numerator);
    auto d = ratios.find(denominator);
    if (n == ratios.end() || d == ratios.end())
        throw ValidationError("site '" + site + "': cross ratio needs both " + std::string(to_string(numerator)) +
                              " and " + std::string(to_string(denominator)) + " measurements");
    return n->second / d->second;
}

ReconciliationReport reconcile(const std::vector<EnergyMeasurement>& site_measurements) {
    if (site_measurements.empty()) throw ValidationError("reconcile: no measurements supplied");
    const EnergyMeasurement& first = site_measurements.front();
    std::set<MeasurementSource> seen;
    const EnergyMeasurement* canonical = &first;
    for (const auto& m : site_measurements) {
        if (m.site != first.site)
            throw ValidationError("reconcile: mixed sites '" + first.site + "' and '" + m.site + "'");
        if (!(m.period == first.period))
            throw ValidationError("reconcile: site '" + m.site + "' has measurements over different periods (" +
                                  to_string(first.period) + " vs " + to_string(m.period) + ")");
        if (!seen.insert(m.source).second)
            throw ValidationError("reconcile: site '" + m.site + "' has more than one " +
                                  std::string(to_string(m.source)) + " measurement");
        if (trust_rank(m.source) < trust_rank(canonical->source)) canonical = &m;
    }

    ReconciliationReport report{first.site, *canonical, {}};
    const Decimal& base = canonical->energy.kwh();
    for (const auto& m : site_measurements) {
        if (base.is_zero()) {
            if (!m.energy.kwh().is_zero())
                throw ValidationError("reconcile: site '" + m.site + "' canonical " +
                                      std::string(to_string(canonical->source)) + " energy is zero but " +
                                      std::string(to_string(m.source)) + " is not");
            report.ratios.emplace(m.source, Decimal(1));
        } else {
            report.ratios.emplace(m.source, m.energy.kwh() / base);
        }
    }
    return report;
}

std::vector<ReconciliationReport> reconcile_all(const std::vector<EnergyMeasurement>& measurements) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<EnergyMeasurement>> groups;
    for (const auto& m : measurements) {
        auto [it, inserted] = groups.try_emplace(m.site);
        if (inserted) order.push_back(m.site);
        it->second.push_back(m);
    }
    std::vector<ReconciliationReport> out;
    out.reserve(order.size());
    for (const auto& site : order) out.push_back(reconcile(groups.at(site)));
    return out;
}

std::vector<EnergyMeasurement> canonical_measurements(const std::vector<ReconciliationReport>& reports) {
    std::vector<EnergyMeasurement> out;
    out.reserve(reports.size());
    for (const auto& r : reports) out.push_back(r.canonical);
    return out;
}

std::vector<EnergyMeasurement> apply_corrections(std::vector<EnergyMeasurement> measurements,
                                                 const std::map<MeasurementSource, Decimal>& factors) {
    for (const auto& [source, factor] : factors)
        if (factor.is_negative())
            throw ValidationError("correction factor for " + std::string(to_string(source)) + " must be non-negative");
    for (auto& m : measurements) {
        if (auto it = factors.find(m.source); it != factors.end()) m.energy = EnergyQuantity(m.energy.kwh() * it->second);
    }
    return measurements;
}

EnergyQuantity snapshot_energy(const std::vector<EnergyMeasurement>& canonical) {
    std::set<std::string> sites;
    EnergyQuantity total;
    for (const auto& m : canonical) {
        if (!sites.insert(m.site).second)
            throw ValidationError("snapshot: site '" + m.site + "' has more than one canonical measurement");
        if (!(m.period == canonical.front().period))
            throw ValidationError("snapshot: site '" + m.site + "' covers " + to_string(m.period) +
                                  " but the snapshot is " + to_string(canonical.front().period));
        total += m.energy;
    }
    return total;
}

std::string_view to_string(FacilitiesComponent component) {
    switch (component) {
        case FacilitiesComponent::cooling: return "cooling";
        case FacilitiesComponent::power: return "power";
        case FacilitiesComponent::facility: return "facility";
    }
    return "cooling";
}

FacilitiesComponent parse_facilities_component(std::string_view text) {
    const std::string s = lower(text);
    if (s == "cooling") return FacilitiesComponent::cooling;
    if (s == "power") return FacilitiesComponent::power;
    if (s == "facility") return FacilitiesComponent::facility;
    throw ValidationError("unknown facilities component '" + std::string(text) +
                          "' (expected cooling, power or facility)");
}

std::vector<FacilitiesMeasurement> parse_facilities(std::istream& in, const std::string& origin) {
    csv::Reader reader(in, origin);
    reader.read_header({"site", "component", "period_start", "period_end", "kwh"});
    std::vector<FacilitiesMeasurement> out;
    std::vector<std::string> row;
    while (reader.next(row)) {
        const std::string& site = row[reader.column("site")];
        if (site.empty()) reader.fail("site", "site must not be empty");
        FacilitiesComponent component{};
        try {
            component = parse_facilities_component(row[reader.column("component")]);
        } catch (const ValidationError& e) {
            reader.fail("component", e.what());
        }
        SnapshotPeriod period = parse_period_fields(reader, row);
        out.push_back(FacilitiesMeasurement{site, component, period, parse_energy_field(reader, row)});
    }
    return out;
}

}  // namespace carbonsnap
