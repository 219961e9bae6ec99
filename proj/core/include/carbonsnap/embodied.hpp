#pragma once

#include <string>
#include <string_view>

#include "carbonsnap/model.hpp"
#include "carbonsnap/time.hpp"

namespace carbonsnap {

enum class AmortizationRule { linear_by_time };

/// How a fixed embodied cost is spread over an asset's service life.
struct AmortizationPolicy {
    AmortizationRule rule = AmortizationRule::linear_by_time;
    // 365.25 reproduces the published per-server snapshot figures; 365 does not.
    Decimal days_per_year = Decimal::ratio(1461, 4);

    // Throws ValidationError unless days_per_year > 0.
    void validate() const;

    friend bool operator==(const AmortizationPolicy&, const AmortizationPolicy&) = default;
};

struct EmbodiedEstimate {
    std::string label;
    Decimal per_node_kg;
};

// Per-node embodied carbon attributed to one day:
//   per_node_kg / (lifespan_years * days_per_year)
CarbonQuantity amortize_per_day(const EmbodiedEstimate& estimate, const Decimal& lifespan_years,
                                const AmortizationPolicy& policy = {});

// Embodied carbon for `node_count` nodes over `period_days`. A zero-day
// window attributes nothing. Throws ValidationError when the window is
// longer than the lifespan, since that would attribute more than the
// whole embodied cost.
CarbonQuantity period_embodied(const EmbodiedEstimate& estimate, const Decimal& lifespan_years,
                               const Decimal& period_days, std::int64_t node_count,
                               const AmortizationPolicy& policy = {});
CarbonQuantity period_embodied(const EmbodiedEstimate& estimate, const Decimal& lifespan_years,
                               const SnapshotPeriod& period, std::int64_t node_count,
                               const AmortizationPolicy& policy = {});

// Sum of period_embodied over every node group, using each group's own
// embodied figure, lifespan and count.
CarbonQuantity fleet_embodied(const Inventory& inventory, const SnapshotPeriod& period,
                              const AmortizationPolicy& policy = {});

// Inventory file:
//   {"sites": [{"name": ..., "facility_embodied_kg"?: n,
//               "node_groups": [{"name", "role", "count",
//                                "embodied_kg_per_node"?, "lifespan_years"?, "in_service"?}]}]}
Inventory parse_inventory(std::string_view json_text, const std::string& origin = "<inventory>");
std::string inventory_to_json(const Inventory& inventory);

}  // namespace carbonsnap
