#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "carbonsnap/decimal.hpp"
#include "carbonsnap/time.hpp"

namespace carbonsnap {

namespace detail {

// Exact, non-negative magnitude. Construction validates the sign; every
// arithmetic result of two non-negative values stays non-negative.
template <class Derived>
class NonNegative {
public:
    const Decimal& value() const noexcept { return value_; }

    friend Derived operator+(const Derived& a, const Derived& b) { return Derived(a.value_ + b.value_); }
    Derived& operator+=(const Derived& rhs) {
        value_ += rhs.value_;
        return static_cast<Derived&>(*this);
    }
    friend bool operator==(const Derived& a, const Derived& b) { return a.value_ == b.value_; }
    friend auto operator<=>(const Derived& a, const Derived& b) { return a.value_ <=> b.value_; }

protected:
    NonNegative() = default;
    NonNegative(Decimal value, const char* what);

private:
    Decimal value_;
};

}  // namespace detail

/// Energy in kWh.
class EnergyQuantity : public detail::NonNegative<EnergyQuantity> {
public:
    EnergyQuantity() = default;
    explicit EnergyQuantity(Decimal kwh);
    static EnergyQuantity kwh(std::string_view text) { return EnergyQuantity(Decimal::parse(text)); }

    const Decimal& kwh() const noexcept { return value(); }
};

/// Carbon-equivalent mass. Stored in grams; kilograms are a view.
class CarbonQuantity : public detail::NonNegative<CarbonQuantity> {
public:
    CarbonQuantity() = default;
    explicit CarbonQuantity(Decimal grams);
    static CarbonQuantity from_kg(const Decimal& kg) { return CarbonQuantity(kg * Decimal(1000)); }

    const Decimal& grams() const noexcept { return value(); }
    Decimal kg() const { return value() / Decimal(1000); }

    CarbonQuantity scaled(const Decimal& factor) const { return CarbonQuantity(value() * factor); }
};

/// Grid carbon intensity in gCO2e per kWh.
class CarbonIntensity : public detail::NonNegative<CarbonIntensity> {
public:
    CarbonIntensity() = default;
    explicit CarbonIntensity(Decimal grams_per_kwh);

    const Decimal& grams_per_kwh() const noexcept { return value(); }
};

/// Power usage effectiveness: total facility energy over IT energy, >= 1.
class PueFactor {
public:
    explicit PueFactor(Decimal value);

    const Decimal& value() const noexcept { return value_; }
    // PUE - 1, the facilities share per unit of IT energy.
    Decimal overhead() const { return value_ - Decimal(1); }

    friend bool operator==(const PueFactor&, const PueFactor&) = default;

private:
    Decimal value_;
};

enum class NodeRole { compute, storage, login, service, network };

std::string_view to_string(NodeRole role);
// Case-insensitive. Throws ValidationError for unknown roles.
NodeRole parse_node_role(std::string_view text);

struct NodeGroup {
    std::string name;
    NodeRole role = NodeRole::compute;
    std::int64_t count = 1;
    // Optional so that an inventory can describe hardware before embodied
    // figures are known; fleet-level embodied accounting requires both.
    std::optional<Decimal> embodied_kg_per_node;
    std::optional<Decimal> lifespan_years;
    // Metadata only. Linear amortization does not depend on elapsed life.
    std::optional<Timestamp> in_service;
};

struct Site {
    std::string name;
    std::vector<NodeGroup> node_groups;
    // Reserved for building/plant embodied carbon; not used in any computation.
    std::optional<Decimal> facility_embodied_kg;
};

/// Hardware inventory. Site names are unique; group names are unique within a site.
class Inventory {
public:
    Inventory() = default;
    // Throws ValidationError on duplicate names, count < 1, lifespan <= 0 or
    // negative embodied figures.
    explicit Inventory(std::vector<Site> sites);

    const std::vector<Site>& sites() const noexcept { return sites_; }
    std::int64_t node_count() const;

private:
    std::vector<Site> sites_;
};

enum class ActiveComponent { nodes, network, facilities };

std::string_view to_string(ActiveComponent component);
// Throws ValidationError for anything other than nodes/network/facilities.
ActiveComponent parse_active_component(std::string_view text);

struct ActiveBreakdown {
    CarbonQuantity nodes;
    CarbonQuantity network;
    CarbonQuantity facilities;

    CarbonQuantity total() const { return nodes + network + facilities; }
    friend bool operator==(const ActiveBreakdown&, const ActiveBreakdown&) = default;
};

// energy x intensity, exact.
CarbonQuantity active_carbon(const EnergyQuantity& energy, const CarbonIntensity& intensity);

// IT carbon scaled by PUE. The facilities share is `facilities_share`.
CarbonQuantity apply_pue(const CarbonQuantity& it_carbon, const PueFactor& pue);
CarbonQuantity facilities_share(const CarbonQuantity& it_carbon, const PueFactor& pue);

// IT carbon plus the PUE-derived facilities term, as a breakdown.
ActiveBreakdown breakdown_with_pue(const CarbonQuantity& nodes, const CarbonQuantity& network,
                                   const PueFactor& pue);

using TaggedCarbon = std::pair<std::string, CarbonQuantity>;

// Sums carbon per component tag; absent tags contribute zero.
ActiveBreakdown aggregate_active(std::span<const TaggedCarbon> parts);
ActiveBreakdown aggregate_active(std::span<const std::pair<ActiveComponent, CarbonQuantity>> parts);

CarbonQuantity total_carbon(const CarbonQuantity& active, const CarbonQuantity& embodied);

}  // namespace carbonsnap
