#include "carbonsnap/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "carbonsnap/error.hpp"

namespace carbonsnap {

namespace detail {

template <class Derived>
NonNegative<Derived>::NonNegative(Decimal value, const char* what) : value_(std::move(value)) {
    if (value_.is_negative())
        throw ValidationError(std::string(what) + " must be non-negative, got " + value_.to_string());
}

template class NonNegative<EnergyQuantity>;
template class NonNegative<CarbonQuantity>;
template class NonNegative<CarbonIntensity>;

}  // namespace detail

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

EnergyQuantity::EnergyQuantity(Decimal kwh) : NonNegative(std::move(kwh), "energy") {}
CarbonQuantity::CarbonQuantity(Decimal grams) : NonNegative(std::move(grams), "carbon") {}
CarbonIntensity::CarbonIntensity(Decimal g) : NonNegative(std::move(g), "carbon intensity") {}

PueFactor::PueFactor(Decimal value) : value_(std::move(value)) {
    if (value_ < Decimal(1))
        throw ValidationError("PUE must be >= 1.0, got " + value_.to_string());
}

std::string_view to_string(NodeRole role) {
    switch (role) {
        case NodeRole::compute: return "compute";
        case NodeRole::storage: return "storage";
        case NodeRole::login: return "login";
        case NodeRole::service: return "service";
        case NodeRole::network: return "network";
    }
    return "compute";
}

NodeRole parse_node_role(std::string_view text) {
    const std::string s = lower(text);
    if (s == "compute") return NodeRole::compute;
    if (s == "storage") return NodeRole::storage;
    if (s == "login") return NodeRole::login;
    if (s == "service") return NodeRole::service;
    if (s == "network") return NodeRole::network;
    throw ValidationError("unknown node role '" + std::string(text) +
                          "' (expected compute, storage, login, service or network)");
}

Inventory::Inventory(std::vector<Site> sites) : sites_(std::move(sites)) {
    std::set<std::string> site_names;
    for (const Site& site : sites_) {
        if (site.name.empty()) throw ValidationError("site name must not be empty");
        if (!site_names.insert(site.name).second)
            throw ValidationError("duplicate site name '" + site.name + "'");
        if (site.facility_embodied_kg && site.facility_embodied_kg->is_negative())
            throw ValidationError("site '" + site.name + "': facility_embodied_kg must be non-negative");
        std::set<std::string> group_names;
        for (const NodeGroup& g : site.node_groups) {
            const std::string where = "site '" + site.name + "', node group '" + g.name + "'";
            if (g.name.empty()) throw ValidationError("site '" + site.name + "': node group name must not be empty");
            if (!group_names.insert(g.name).second) throw ValidationError("duplicate " + where);
            if (g.count < 1) throw ValidationError(where + ": count must be >= 1");
            if (g.lifespan_years && !(*g.lifespan_years > Decimal(0)))
                throw ValidationError(where + ": lifespan_years must be > 0");
            if (g.embodied_kg_per_node && g.embodied_kg_per_node->is_negative())
                throw ValidationError(where + ": embodied_kg_per_node must be non-negative");
        }
    }
}

std::int64_t Inventory::node_count() const {
    std::int64_t n = 0;
    for (const Site& s : sites_)
        for (const NodeGroup& g : s.node_groups) n += g.count;
    return n;
}

std::string_view to_string(ActiveComponent component) {
    switch (component) {
        case ActiveComponent::nodes: return "nodes";
        case ActiveComponent::network: return "network";
        case ActiveComponent::facilities: return "facilities";
    }
    return "nodes";
}

ActiveComponent parse_active_component(std::string_view text) {
    const std::string s = lower(text);
    if (s == "nodes") return ActiveComponent::nodes;
    if (s == "network") return ActiveComponent::network;
    if (s == "facilities") return ActiveComponent::facilities;
    throw ValidationError("unknown active component '" + std::string(text) +
                          "' (expected nodes, network or facilities)");
}

CarbonQuantity active_carbon(const EnergyQuantity& energy, const CarbonIntensity& intensity) {
    return CarbonQuantity(energy.kwh() * intensity.grams_per_kwh());
}

CarbonQuantity apply_pue(const CarbonQuantity& it_carbon, const PueFactor& pue) {
    return it_carbon.scaled(pue.value());
}

CarbonQuantity facilities_share(const CarbonQuantity& it_carbon, const PueFactor& pue) {
    return it_carbon.scaled(pue.overhead());
}

ActiveBreakdown breakdown_with_pue(const CarbonQuantity& nodes, const CarbonQuantity& network,
                                   const PueFactor& pue) {
    return ActiveBreakdown{nodes, network, facilities_share(nodes + network, pue)};
}

ActiveBreakdown aggregate_active(std::span<const std::pair<ActiveComponent, CarbonQuantity>> parts) {
    ActiveBreakdown out;
    for (const auto& [tag, carbon] : parts) {
        switch (tag) {
            case ActiveComponent::nodes: out.nodes += carbon; break;
            case ActiveComponent::network: out.network += carbon; break;
            case ActiveComponent::facilities: out.facilities += carbon; break;
        }
    }
    return out;
}

ActiveBreakdown aggregate_active(std::span<const TaggedCarbon> parts) {
    std::vector<std::pair<ActiveComponent, CarbonQuantity>> typed;
    typed.reserve(parts.size());
    for (const auto& [tag, carbon] : parts) typed.emplace_back(parse_active_component(tag), carbon);
    return aggregate_active(std::span<const std::pair<ActiveComponent, CarbonQuantity>>(typed));
}

CarbonQuantity total_carbon(const CarbonQuantity& active, const CarbonQuantity& embodied) {
    return active + embodied;
}

}  // namespace carbonsnap
