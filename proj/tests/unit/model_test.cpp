#include <gtest/gtest.h>

#include <utility>
#include <vector>

#include "carbonsnap/error.hpp"
#include "carbonsnap/model.hpp"
#include "test_util.hpp"

using namespace carbonsnap;
using test::d;

TEST(Model, QuantitiesRejectNegatives) {
    EXPECT_THROW(EnergyQuantity(Decimal(-1)), ValidationError);
    EXPECT_THROW(CarbonQuantity(Decimal(-1)), ValidationError);
    EXPECT_THROW(CarbonIntensity(Decimal(-1)), ValidationError);
    EXPECT_THROW(PueFactor(d("0.99")), ValidationError);
    EXPECT_NO_THROW(PueFactor(Decimal(1)));
}

TEST(Model, ActiveCarbonIsEnergyTimesIntensity) {
    const auto c = active_carbon(test::kwh("19380"), test::gpk("50"));
    EXPECT_EQ(c.grams(), Decimal(969000));
    EXPECT_EQ(c.kg(), Decimal(969));
    EXPECT_EQ(active_carbon(EnergyQuantity(), test::gpk("300")), CarbonQuantity());
}

TEST(Model, PueSplitsIntoFacilitiesShare) {
    const auto it = CarbonQuantity::from_kg(Decimal(969));
    const PueFactor pue(d("1.1"));
    EXPECT_EQ(apply_pue(it, pue).kg(), d("1065.9"));
    EXPECT_EQ(facilities_share(it, pue).kg(), d("96.9"));
    const auto b = breakdown_with_pue(CarbonQuantity::from_kg(Decimal(900)), CarbonQuantity::from_kg(Decimal(69)), pue);
    EXPECT_EQ(b.total(), apply_pue(it, pue));
    EXPECT_EQ(b.facilities, facilities_share(it, pue));
}

TEST(Model, AggregateByTag) {
    const std::vector<TaggedCarbon> parts{{"nodes", CarbonQuantity(Decimal(5))},
                                          {"network", CarbonQuantity(Decimal(2))},
                                          {"nodes", CarbonQuantity(Decimal(1))}};
    const auto b = aggregate_active(parts);
    EXPECT_EQ(b.nodes.grams(), Decimal(6));
    EXPECT_EQ(b.network.grams(), Decimal(2));
    EXPECT_EQ(b.facilities.grams(), Decimal(0));
    const std::vector<TaggedCarbon> bad{{"lighting", CarbonQuantity(Decimal(1))}};
    EXPECT_THROW(aggregate_active(bad), ValidationError);
}

TEST(Model, TotalCarbonAdds) {
    EXPECT_EQ(total_carbon(CarbonQuantity(Decimal(3)), CarbonQuantity(Decimal(4))).grams(), Decimal(7));
}

TEST(Model, InventoryValidation) {
    Site s{"DUR", {NodeGroup{"a", NodeRole::compute, 10, {}, {}, {}}, NodeGroup{"a", NodeRole::storage, 1, {}, {}, {}}}, {}};
    EXPECT_THROW(Inventory({s}), ValidationError);
    s.node_groups[1].name = "b";
    EXPECT_EQ(Inventory({s}).node_count(), 11);
    s.node_groups[1].count = 0;
    EXPECT_THROW(Inventory({s}), ValidationError);
    s.node_groups[1].count = 1;
    s.node_groups[1].lifespan_years = Decimal(0);
    EXPECT_THROW(Inventory({s}), ValidationError);
    EXPECT_THROW(Inventory({Site{"X", {}, {}}, Site{"X", {}, {}}}), ValidationError);
}

TEST(Model, RoleParsing) {
    EXPECT_EQ(parse_node_role("Storage"), NodeRole::storage);
    EXPECT_THROW(parse_node_role("gpu"), ValidationError);
    EXPECT_EQ(parse_active_component("facilities"), ActiveComponent::facilities);
}
