#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace carbonsnap::testkit {

struct PropertyResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0 && cases > 0; }
};

// Each suite draws `cases` random inputs from a generator seeded with `seed`.
PropertyResult active_carbon_linearity(std::uint64_t seed, int cases);
PropertyResult active_carbon_monotonicity(std::uint64_t seed, int cases);
PropertyResult trapezoid_exact_on_piecewise_linear(std::uint64_t seed, int cases);
PropertyResult trapezoid_matches_riemann_on_smooth(std::uint64_t seed, int cases);
PropertyResult embodied_lifetime_closure(std::uint64_t seed, int cases);
PropertyResult embodied_time_additivity(std::uint64_t seed, int cases);
PropertyResult time_weighted_constant_series(std::uint64_t seed, int cases);
PropertyResult time_weighted_split_invariance(std::uint64_t seed, int cases);
PropertyResult report_json_round_trip(std::uint64_t seed, int cases);

std::vector<PropertyResult> run_all_properties(std::uint64_t seed, int cases);

}  // namespace carbonsnap::testkit
