#include "carbonsnap/embodied.hpp"

#include "carbonsnap/error.hpp"
#include "json_util.hpp"

namespace carbonsnap {

using jsonutil::json;

void AmortizationPolicy::validate() const {
    if (!(days_per_year > Decimal(0)))
        throw ValidationError("days_per_year must be > 0, got " + days_per_year.to_string());
}

CarbonQuantity amortize_per_day(const EmbodiedEstimate& estimate, const Decimal& lifespan_years,
                                const AmortizationPolicy& policy) {
    policy.validate();
    if (!(lifespan_years > Decimal(0)))
        throw ValidationError("lifespan must be > 0 years, got " + lifespan_years.to_string());
    if (estimate.per_node_kg.is_negative())
        throw ValidationError("embodied estimate '" + estimate.label + "' must be non-negative");
    return CarbonQuantity::from_kg(estimate.per_node_kg / (lifespan_years * policy.days_per_year));
}

CarbonQuantity period_embodied(const EmbodiedEstimate& estimate, const Decimal& lifespan_years,
                               const Decimal& period_days, std::int64_t node_count,
                               const AmortizationPolicy& policy) {
    if (node_count < 1) throw ValidationError("node count must be >= 1");
    if (period_days.is_negative()) throw ValidationError("period length must be non-negative");
    const CarbonQuantity per_day = amortize_per_day(estimate, lifespan_years, policy);
    if (period_days > lifespan_years * policy.days_per_year)
        throw ValidationError("period of " + period_days.to_string() + " days exceeds the " +
                              lifespan_years.to_string() + "-year lifespan");
    return per_day.scaled(period_days * Decimal(node_count));
}

CarbonQuantity period_embodied(const EmbodiedEstimate& estimate, const Decimal& lifespan_years,
                               const SnapshotPeriod& period, std::int64_t node_count,
                               const AmortizationPolicy& policy) {
    return period_embodied(estimate, lifespan_years, period.duration_days(), node_count, policy);
}

CarbonQuantity fleet_embodied(const Inventory& inventory, const SnapshotPeriod& period,
                              const AmortizationPolicy& policy) {
    CarbonQuantity total;
    for (const Site& site : inventory.sites()) {
        for (const NodeGroup& group : site.node_groups) {
            if (!group.embodied_kg_per_node || !group.lifespan_years)
                throw ValidationError("site '" + site.name + "', node group '" + group.name +
                                      "' lacks embodied_kg_per_node or lifespan_years");
            total += period_embodied(EmbodiedEstimate{group.name, *group.embodied_kg_per_node},
                                     *group.lifespan_years, period, group.count, policy);
        }
    }
    return total;
}

Inventory parse_inventory(std::string_view json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin, 0, 0, std::string("invalid JSON: ") + e.what());
    }
    try {
        const json& sites = jsonutil::require(doc, "sites", "inventory");
        if (!sites.is_array()) throw ValidationError("inventory: 'sites' must be an array");
        std::vector<Site> out;
        for (std::size_t i = 0; i < sites.size(); ++i) {
            const json& s = sites[i];
            const std::string where = "sites[" + std::to_string(i) + "]";
            Site site;
            site.name = jsonutil::require_string(s, "name", where);
            if (s.contains("facility_embodied_kg"))
                site.facility_embodied_kg = jsonutil::to_decimal(s.at("facility_embodied_kg"), where + ".facility_embodied_kg");
            const json& groups = jsonutil::require(s, "node_groups", where);
            if (!groups.is_array()) throw ValidationError(where + ": 'node_groups' must be an array");
            for (std::size_t j = 0; j < groups.size(); ++j) {
                const json& g = groups[j];
                const std::string gwhere = where + ".node_groups[" + std::to_string(j) + "]";
                NodeGroup group;
                group.name = jsonutil::require_string(g, "name", gwhere);
                group.role = parse_node_role(jsonutil::require_string(g, "role", gwhere));
                const Decimal count = jsonutil::to_decimal(jsonutil::require(g, "count", gwhere), gwhere + ".count");
                if (!count.is_integer() || count < Decimal(1))
                    throw ValidationError(gwhere + ".count must be a positive integer");
                group.count = count.raw().convert_to<std::int64_t>();
                if (g.contains("embodied_kg_per_node"))
                    group.embodied_kg_per_node =
                        jsonutil::to_decimal(g.at("embodied_kg_per_node"), gwhere + ".embodied_kg_per_node");
                if (g.contains("lifespan_years"))
                    group.lifespan_years = jsonutil::to_decimal(g.at("lifespan_years"), gwhere + ".lifespan_years");
                if (g.contains("in_service"))
                    group.in_service = parse_timestamp(jsonutil::require_string(g, "in_service", gwhere));
                site.node_groups.push_back(std::move(group));
            }
            out.push_back(std::move(site));
        }
        return Inventory(std::move(out));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(origin, 0, 0, e.what());
    }
}

std::string inventory_to_json(const Inventory& inventory) {
    json sites = json::array();
    for (const Site& site : inventory.sites()) {
        json groups = json::array();
        for (const NodeGroup& g : site.node_groups) {
            json jg{{"name", g.name}, {"role", std::string(to_string(g.role))}, {"count", g.count}};
            if (g.embodied_kg_per_node) jg["embodied_kg_per_node"] = jsonutil::number(*g.embodied_kg_per_node);
            if (g.lifespan_years) jg["lifespan_years"] = jsonutil::number(*g.lifespan_years);
            if (g.in_service) jg["in_service"] = format_timestamp(*g.in_service);
            groups.push_back(std::move(jg));
        }
        json js{{"name", site.name}, {"node_groups", std::move(groups)}};
        if (site.facility_embodied_kg) js["facility_embodied_kg"] = jsonutil::number(*site.facility_embodied_kg);
        sites.push_back(std::move(js));
    }
    return json{{"sites", std::move(sites)}}.dump(2) + "\n";
}

}  // namespace carbonsnap
