#include "carbonsnap/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "carbonsnap/error.hpp"
#include "json_util.hpp"

namespace carbonsnap {

using jsonutil::json;

namespace {

// JSON carries kg as exact text.
std::string kg_text(const CarbonQuantity& c) { return c.kg().to_string(); }

CarbonQuantity kg_from_text(const json& value, const std::string& where) {
    if (!value.is_string()) throw ValidationError(where + " must be a decimal string");
    return CarbonQuantity::from_kg(Decimal::parse(value.get<std::string>()));
}

Decimal decimal_from_text(const json& value, const std::string& where) {
    if (!value.is_string()) throw ValidationError(where + " must be a decimal string");
    return Decimal::parse(value.get<std::string>());
}

json axis_to_json(const ScenarioAxis& axis) {
    json points = json::array();
    for (const auto& p : axis.points()) points.push_back(json{{"label", p.label}, {"value", p.value.to_string()}});
    return json{{"name", axis.name()}, {"points", std::move(points)}};
}

ScenarioAxis axis_from_json(const json& j, const std::string& where) {
    const json& points = jsonutil::require(j, "points", where);
    if (!points.is_array()) throw ValidationError(where + ".points must be an array");
    if (points.empty()) return ScenarioAxis();
    std::vector<AxisPoint> out;
    for (const auto& p : points)
        out.push_back(AxisPoint{jsonutil::require_string(p, "label", where),
                                decimal_from_text(jsonutil::require(p, "value", where), where + ".value")});
    return ScenarioAxis(jsonutil::require_string(j, "name", where), std::move(out));
}

std::string display(const Decimal& d) {
    // short human form: exact when terminating, else 4 places
    const std::string exact = d.to_string();
    return exact.find('/') == std::string::npos ? exact : d.to_fixed(4);
}

std::string rounded(const Decimal& value, Rounding rounding, int places) {
    const Decimal r = rounding == Rounding::half_up ? value.round_half_up(places) : value.truncate(places);
    return r.to_fixed(places);
}

std::string md_row(const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& c : cells) out += " " + c + " |";
    return out + "\n";
}

std::string md_rule(std::size_t columns) {
    std::string out = "| --- |";
    for (std::size_t i = 1; i < columns; ++i) out += " ---: |";
    return out + "\n";
}

template <class Grid>
const CarbonQuantity& grid_at(const Grid& grid, const ScenarioAxis& rows, const ScenarioAxis& cols,
                              std::string_view row, std::string_view col) {
    return grid.at(rows.index_of(row)).at(cols.index_of(col));
}

}  // namespace

ScenarioAxis::ScenarioAxis(std::string name, std::vector<AxisPoint> points)
    : name_(std::move(name)), points_(std::move(points)) {
    if (points_.empty()) throw ValidationError("scenario axis '" + name_ + "' needs at least one point");
    std::set<std::string> labels;
    for (const auto& p : points_) {
        if (p.label.empty()) throw ValidationError("scenario axis '" + name_ + "' has an empty label");
        if (!labels.insert(p.label).second)
            throw ValidationError("scenario axis '" + name_ + "' repeats label '" + p.label + "'");
    }
}

std::size_t ScenarioAxis::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i].label == label) return i;
    throw ValidationError("scenario axis '" + name_ + "' has no point '" + std::string(label) + "'");
}

const CarbonQuantity& ActiveMatrix::at(std::string_view intensity, std::string_view pue) const {
    return grid_at(cells, intensities, pues, intensity, pue);
}

const CarbonQuantity& EmbodiedMatrix::snapshot_at(std::string_view estimate, std::string_view lifespan) const {
    return grid_at(snapshot, estimates, lifespans, estimate, lifespan);
}

const CarbonQuantity& EmbodiedMatrix::per_day_at(std::string_view estimate, std::string_view lifespan) const {
    return grid_at(per_day, estimates, lifespans, estimate, lifespan);
}

EquivalenceFactor flight_factor() { return EquivalenceFactor{"flight", Decimal(92), "passenger-hours"}; }

ActiveMatrix build_active_matrix(const EnergyQuantity& energy, const ScenarioAxis& intensities,
                                 const ScenarioAxis& pues) {
    return build_active_matrix(ActiveEnergyBasis{energy, {}, {}, {}}, intensities, pues);
}

ActiveMatrix build_active_matrix(const ActiveEnergyBasis& basis, const ScenarioAxis& intensities,
                                 const ScenarioAxis& pues) {
    if (intensities.size() == 0 || pues.size() == 0) throw ValidationError("active matrix axes must be non-empty");
    if (basis.metered_it > basis.it())
        throw ValidationError("metered IT energy exceeds the total IT energy");
    const EnergyQuantity it = basis.it();
    const EnergyQuantity estimated_it(it.kwh() - basis.metered_it.kwh());

    ActiveMatrix m{intensities, pues, {}, {}};
    for (const auto& ip : intensities.points()) {
        const CarbonIntensity ci(ip.value);
        m.base.push_back(active_carbon(it, ci));
        std::vector<CarbonQuantity> row;
        for (const auto& pp : pues.points()) {
            const PueFactor pue(pp.value);
            const CarbonQuantity pue_part = apply_pue(active_carbon(estimated_it, ci), pue);
            const CarbonQuantity metered_part = active_carbon(basis.metered_it + basis.metered_facilities, ci);
            row.push_back(pue_part + metered_part);
        }
        m.cells.push_back(std::move(row));
    }
    return m;
}

EmbodiedMatrix build_embodied_matrix(const ScenarioAxis& estimates, const ScenarioAxis& lifespans,
                                     std::int64_t node_count, const Decimal& period_days,
                                     const AmortizationPolicy& policy) {
    if (estimates.size() == 0 || lifespans.size() == 0) throw ValidationError("embodied matrix axes must be non-empty");
    EmbodiedMatrix m{estimates, lifespans, node_count, period_days, policy, {}, {}};
    for (const auto& ep : estimates.points()) {
        const EmbodiedEstimate estimate{ep.label, ep.value};
        std::vector<CarbonQuantity> per_day;
        std::vector<CarbonQuantity> snapshot;
        for (const auto& lp : lifespans.points()) {
            per_day.push_back(amortize_per_day(estimate, lp.value, policy));
            snapshot.push_back(period_embodied(estimate, lp.value, period_days, node_count, policy));
        }
        m.per_day.push_back(std::move(per_day));
        m.snapshot.push_back(std::move(snapshot));
    }
    return m;
}

Totals compute_totals(const ActiveMatrix& active, const EmbodiedMatrix& embodied) {
    auto bounds = [](const std::vector<std::vector<CarbonQuantity>>& grid) {
        std::pair<CarbonQuantity, CarbonQuantity> mm;
        bool first = true;
        for (const auto& row : grid)
            for (const auto& c : row) {
                if (first || c < mm.first) mm.first = c;
                if (first || c > mm.second) mm.second = c;
                first = false;
            }
        return mm;
    };
    const auto a = bounds(active.cells);
    const auto e = bounds(embodied.snapshot);
    return Totals{total_carbon(a.first, e.first), total_carbon(a.second, e.second)};
}

Decimal equivalent(const CarbonQuantity& carbon, const EquivalenceFactor& factor) {
    if (!(factor.kg_per_unit > Decimal(0)))
        throw ValidationError("equivalence factor '" + factor.name + "' must be positive");
    return carbon.kg() / factor.kg_per_unit;
}

Decimal flight_equivalent(const CarbonQuantity& carbon) { return equivalent(carbon, flight_factor()); }

ScenarioReport build_report(const ActiveEnergyBasis& energy, const ScenarioAxis& intensities,
                            const ScenarioAxis& pues, const ScenarioAxis& estimates,
                            const ScenarioAxis& lifespans, std::int64_t node_count,
                            const Decimal& period_days, const AmortizationPolicy& policy,
                            const std::vector<EquivalenceFactor>& factors, Provenance provenance) {
    const bool with_embodied = estimates.size() > 0 && lifespans.size() > 0;
    ScenarioReport r{energy,
                     build_active_matrix(energy, intensities, pues),
                     with_embodied ? build_embodied_matrix(estimates, lifespans, node_count, period_days, policy)
                                   : EmbodiedMatrix{{}, {}, 0, period_days, policy, {}, {}},
                     {},
                     {},
                     std::move(provenance)};
    r.totals = compute_totals(r.active, r.embodied);
    for (const auto& f : factors) {
        r.equivalents.push_back(Equivalent{f.name + " (min total)", equivalent(r.totals.min, f), f.unit});
        r.equivalents.push_back(Equivalent{f.name + " (max total)", equivalent(r.totals.max, f), f.unit});
    }
    return r;
}

std::string format_kg(const CarbonQuantity& carbon, Rounding rounding, int places) {
    return rounded(carbon.kg(), rounding, places);
}

std::string render_json(const ScenarioReport& report) {
    const auto& a = report.active;
    const auto& e = report.embodied;

    json base = json::array();
    json active_cells = json::array();
    for (std::size_t i = 0; i < a.intensities.size(); ++i) {
        const std::string& il = a.intensities.points()[i].label;
        base.push_back(json{{"intensity", il}, {"kg", kg_text(a.base.at(i))}});
        for (std::size_t j = 0; j < a.pues.size(); ++j)
            active_cells.push_back(
                json{{"intensity", il}, {"pue", a.pues.points()[j].label}, {"kg", kg_text(a.cells.at(i).at(j))}});
    }

    json embodied_cells = json::array();
    for (std::size_t i = 0; i < e.estimates.size(); ++i)
        for (std::size_t j = 0; j < e.lifespans.size(); ++j)
            embodied_cells.push_back(json{{"estimate", e.estimates.points()[i].label},
                                          {"lifespan", e.lifespans.points()[j].label},
                                          {"per_day_kg", kg_text(e.per_day.at(i).at(j))},
                                          {"snapshot_kg", kg_text(e.snapshot.at(i).at(j))}});

    json equivalents = json::array();
    for (const auto& q : report.equivalents)
        equivalents.push_back(json{{"name", q.name}, {"quantity", q.quantity.to_string()}, {"unit", q.unit}});

    json inputs = json::object();
    for (const auto& [k, v] : report.provenance.inputs) inputs[k] = v;

    json doc{
        {"base_energy_kwh", report.base_energy().kwh().to_string()},
        {"active_energy",
         {{"nodes_kwh", report.energy.nodes.kwh().to_string()},
          {"network_kwh", report.energy.network.kwh().to_string()},
          {"metered_it_kwh", report.energy.metered_it.kwh().to_string()},
          {"metered_facilities_kwh", report.energy.metered_facilities.kwh().to_string()}}},
        {"active_matrix", {{"base", std::move(base)}, {"cells", std::move(active_cells)}}},
        {"embodied_matrix",
         {{"cells", std::move(embodied_cells)},
          {"node_count", e.node_count},
          {"period_days", e.period_days.to_string()},
          {"days_per_year", e.policy.days_per_year.to_string()},
          {"rule", "linear_by_time"}}},
        {"totals", {{"min_kg", kg_text(report.totals.min)}, {"max_kg", kg_text(report.totals.max)}}},
        {"equivalents", std::move(equivalents)},
        {"provenance",
         {{"inputs", std::move(inputs)},
          {"scenario_axes",
           {{"intensity", axis_to_json(a.intensities)},
            {"pue", axis_to_json(a.pues)},
            {"embodied_estimate", axis_to_json(e.estimates)},
            {"lifespan", axis_to_json(e.lifespans)}}},
          {"tool_version", report.provenance.tool_version}}},
    };
    return doc.dump(2) + "\n";
}

ScenarioReport parse_report_json(std::string_view text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin, 0, 0, std::string("invalid JSON: ") + e.what());
    }
    try {
        using jsonutil::require;
        const json& prov = require(doc, "provenance", "report");
        const json& axes = require(prov, "scenario_axes", "provenance");

        ActiveEnergyBasis energy;
        const json& ae = require(doc, "active_energy", "report");
        energy.nodes = EnergyQuantity(decimal_from_text(require(ae, "nodes_kwh", "active_energy"), "nodes_kwh"));
        energy.network = EnergyQuantity(decimal_from_text(require(ae, "network_kwh", "active_energy"), "network_kwh"));
        energy.metered_it =
            EnergyQuantity(decimal_from_text(require(ae, "metered_it_kwh", "active_energy"), "metered_it_kwh"));
        energy.metered_facilities = EnergyQuantity(
            decimal_from_text(require(ae, "metered_facilities_kwh", "active_energy"), "metered_facilities_kwh"));
        if (!(decimal_from_text(require(doc, "base_energy_kwh", "report"), "base_energy_kwh") == energy.it().kwh()))
            throw ValidationError("base_energy_kwh disagrees with active_energy");

        ActiveMatrix active{axis_from_json(require(axes, "intensity", "scenario_axes"), "scenario_axes.intensity"),
                            axis_from_json(require(axes, "pue", "scenario_axes"), "scenario_axes.pue"),
                            {},
                            {}};
        const std::size_t ni = active.intensities.size();
        const std::size_t np = active.pues.size();
        active.base.assign(ni, CarbonQuantity());
        active.cells.assign(ni, std::vector<CarbonQuantity>(np));
        const json& am = require(doc, "active_matrix", "report");
        const json& base = require(am, "base", "active_matrix");
        const json& cells = require(am, "cells", "active_matrix");
        if (base.size() != ni || cells.size() != ni * np)
            throw ValidationError("active_matrix size does not match its axes");
        for (const auto& b : base)
            active.base[active.intensities.index_of(jsonutil::require_string(b, "intensity", "base"))] =
                kg_from_text(require(b, "kg", "base"), "base.kg");
        for (const auto& c : cells)
            active.cells[active.intensities.index_of(jsonutil::require_string(c, "intensity", "cells"))]
                        [active.pues.index_of(jsonutil::require_string(c, "pue", "cells"))] =
                kg_from_text(require(c, "kg", "cells"), "cells.kg");

        const json& em = require(doc, "embodied_matrix", "report");
        EmbodiedMatrix embodied{
            axis_from_json(require(axes, "embodied_estimate", "scenario_axes"), "scenario_axes.embodied_estimate"),
            axis_from_json(require(axes, "lifespan", "scenario_axes"), "scenario_axes.lifespan"),
            0,
            decimal_from_text(require(em, "period_days", "embodied_matrix"), "period_days"),
            AmortizationPolicy{AmortizationRule::linear_by_time,
                               decimal_from_text(require(em, "days_per_year", "embodied_matrix"), "days_per_year")},
            {},
            {}};
        const json& nc = require(em, "node_count", "embodied_matrix");
        if (!nc.is_number_integer()) throw ValidationError("embodied_matrix.node_count must be an integer");
        embodied.node_count = nc.get<std::int64_t>();
        if (jsonutil::require_string(em, "rule", "embodied_matrix") != "linear_by_time")
            throw ValidationError("embodied_matrix.rule must be linear_by_time");
        const std::size_t ne = embodied.estimates.size();
        const std::size_t nl = embodied.lifespans.size();
        embodied.per_day.assign(ne, std::vector<CarbonQuantity>(nl));
        embodied.snapshot.assign(ne, std::vector<CarbonQuantity>(nl));
        const json& ecells = require(em, "cells", "embodied_matrix");
        if (ecells.size() != ne * nl) throw ValidationError("embodied_matrix size does not match its axes");
        for (const auto& c : ecells) {
            const std::size_t i = embodied.estimates.index_of(jsonutil::require_string(c, "estimate", "cells"));
            const std::size_t j = embodied.lifespans.index_of(jsonutil::require_string(c, "lifespan", "cells"));
            embodied.per_day[i][j] = kg_from_text(require(c, "per_day_kg", "cells"), "per_day_kg");
            embodied.snapshot[i][j] = kg_from_text(require(c, "snapshot_kg", "cells"), "snapshot_kg");
        }

        const json& t = require(doc, "totals", "report");
        Totals totals{kg_from_text(require(t, "min_kg", "totals"), "min_kg"),
                      kg_from_text(require(t, "max_kg", "totals"), "max_kg")};

        std::vector<Equivalent> equivalents;
        for (const auto& q : require(doc, "equivalents", "report"))
            equivalents.push_back(Equivalent{jsonutil::require_string(q, "name", "equivalents"),
                                             decimal_from_text(require(q, "quantity", "equivalents"), "quantity"),
                                             jsonutil::require_string(q, "unit", "equivalents")});

        Provenance provenance;
        provenance.tool_version = jsonutil::require_string(prov, "tool_version", "provenance");
        const json& inputs = require(prov, "inputs", "provenance");
        if (!inputs.is_object()) throw ValidationError("provenance.inputs must be an object");
        for (const auto& [k, v] : inputs.items()) {
            if (!v.is_string()) throw ValidationError("provenance.inputs values must be strings");
            provenance.inputs[k] = v.get<std::string>();
        }

        return ScenarioReport{energy, std::move(active), std::move(embodied), totals, std::move(equivalents),
                              std::move(provenance)};
    } catch (const ParseError& e) {
        throw ParseError(origin, 0, 0, e.what());
    } catch (const Error& e) {
        throw ParseError(origin, 0, 0, e.what());
    } catch (const json::exception& e) {
        throw ParseError(origin, 0, 0, e.what());
    }
}

std::string render_markdown(const ScenarioReport& report, const MarkdownOptions& options) {
    std::ostringstream out;
    const auto& a = report.active;
    const auto& e = report.embodied;

    out << "# Carbon scenario report\n\n";
    out << "IT energy for the period: " << display(report.base_energy().kwh()) << " kWh\n\n";

    out << "## Active carbon estimates (kgCO2e)\n\n";
    if (a.intensities.size() == 0 || a.pues.size() == 0) {
        out << "_no active scenarios_\n\n";
    } else {
        std::vector<std::string> header{"Carbon intensity"};
        std::vector<std::string> base_row{"Active Energy Carbon"};
        std::vector<std::string> pue_row{"PUE Estimate"};
        std::vector<std::string> cell_row{"Active Energy Carbon including Facilities"};
        for (std::size_t i = 0; i < a.intensities.size(); ++i) {
            const auto& ip = a.intensities.points()[i];
            for (std::size_t j = 0; j < a.pues.size(); ++j) {
                const auto& pp = a.pues.points()[j];
                header.push_back(ip.label + " (" + display(ip.value) + " g/kWh)");
                base_row.push_back(format_kg(a.base.at(i)));
                pue_row.push_back(pp.label + " (" + display(pp.value) + ")");
                cell_row.push_back(format_kg(a.cells.at(i).at(j)));
            }
        }
        out << md_row(header) << md_rule(header.size()) << md_row(base_row) << md_row(pue_row) << md_row(cell_row)
            << "\n";
    }

    out << "## Embodied carbon estimates\n\n";
    if (e.estimates.size() == 0 || e.lifespans.size() == 0) {
        out << "_no embodied scenarios_\n\n";
    } else {
        out << e.node_count << " servers over " << display(e.period_days) << " day(s), "
            << display(e.policy.days_per_year) << " days per year\n\n";
        std::vector<std::string> header{"Server Lifespan (years)"};
        for (const auto& ep : e.estimates.points())
            header.push_back(ep.label + " kg: kgCO2e per 24 hours per server");
        for (const auto& ep : e.estimates.points()) header.push_back(ep.label + " kg: Snapshot Embodied carbon (kgCO2e)");
        out << md_row(header) << md_rule(header.size());
        for (std::size_t j = 0; j < e.lifespans.size(); ++j) {
            std::vector<std::string> row{e.lifespans.points()[j].label};
            for (std::size_t i = 0; i < e.estimates.size(); ++i)
                row.push_back(format_kg(e.per_day.at(i).at(j), Rounding::half_up, 2));
            for (std::size_t i = 0; i < e.estimates.size(); ++i)
                row.push_back(format_kg(e.snapshot.at(i).at(j), options.embodied_snapshot));
            out << md_row(row);
        }
        out << "\n";
    }

    out << "## Totals (active + embodied, kgCO2e)\n\n";
    out << md_row({"Bound", "kgCO2e"}) << md_rule(2);
    out << md_row({"Minimum", format_kg(report.totals.min)});
    out << md_row({"Maximum", format_kg(report.totals.max)}) << "\n";

    if (!report.equivalents.empty()) {
        out << "## Equivalents\n\n";
        out << md_row({"Equivalent", "Quantity", "Unit"}) << md_rule(3);
        for (const auto& q : report.equivalents)
            out << md_row({q.name, q.quantity.round_half_up(2).to_fixed(2), q.unit});
        out << "\n";
    }
    return out.str();
}

}  // namespace carbonsnap
