#include <gtest/gtest.h>

#include "carbonsnap/error.hpp"
#include "carbonsnap/report.hpp"
#include "test_util.hpp"

using namespace carbonsnap;
using test::d;

namespace {

ScenarioAxis axis(const std::string& name, std::initializer_list<std::pair<const char*, const char*>> pts) {
    std::vector<AxisPoint> v;
    for (const auto& [l, x] : pts) v.push_back(AxisPoint{l, d(x)});
    return ScenarioAxis(name, v);
}

ScenarioAxis intensities() { return axis("intensity", {{"Low", "50"}, {"Medium", "175"}, {"High", "300"}}); }
ScenarioAxis pues() { return axis("pue", {{"1.1", "1.1"}, {"1.3", "1.3"}, {"1.6", "1.6"}}); }
ScenarioAxis estimates() { return axis("estimate", {{"400", "400"}, {"1100", "1100"}}); }
ScenarioAxis lifespans() { return axis("lifespan", {{"3", "3"}, {"4", "4"}, {"5", "5"}, {"6", "6"}, {"7", "7"}}); }

ScenarioReport table_report() {
    return build_report(ActiveEnergyBasis{test::kwh("19380"), {}, {}, {}}, intensities(), pues(), estimates(),
                        lifespans(), 2400, Decimal(1), AmortizationPolicy{}, {flight_factor()},
                        Provenance{{{"config", "test"}}, "carbonsnap test"});
}

}  // namespace

TEST(Report, AxisValidation) {
    EXPECT_THROW(ScenarioAxis("x", {}), ValidationError);
    EXPECT_THROW(axis("x", {{"a", "1"}, {"a", "2"}}), ValidationError);
    EXPECT_EQ(intensities().index_of("High"), 2u);
    EXPECT_THROW(intensities().index_of("Extreme"), ValidationError);
}

TEST(Report, ActiveMatrixCells) {
    const auto m = build_active_matrix(test::kwh("19380"), intensities(), pues());
    const int expected[3][3] = {{1066, 1260, 1550}, {3731, 4409, 5426}, {6395, 7558, 9302}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_NEAR(m.cells[i][j].kg().to_double(), expected[i][j], 1.0) << i << "," << j;
    EXPECT_EQ(m.at("Low", "1.1").kg(), d("1065.9"));
    EXPECT_EQ(m.base[1].kg(), d("3391.5"));
}

TEST(Report, SinglePointAxes) {
    const auto m = build_active_matrix(test::kwh("19380"), axis("i", {{"50", "50"}}), axis("p", {{"1.1", "1.1"}}));
    ASSERT_EQ(m.cells.size(), 1u);
    EXPECT_EQ(m.cells[0][0].kg(), d("1065.9"));
}

TEST(Report, ZeroEnergyGivesZeroCells) {
    const auto m = build_active_matrix(EnergyQuantity(), intensities(), pues());
    for (const auto& row : m.cells)
        for (const auto& c : row) EXPECT_EQ(c, CarbonQuantity());
}

TEST(Report, MeteredFacilitiesReplacePue) {
    // half the IT energy sits at a site with 200 kWh of metered cooling
    const ActiveEnergyBasis basis{test::kwh("1000"), {}, test::kwh("500"), test::kwh("200")};
    const auto m = build_active_matrix(basis, axis("i", {{"100", "100"}}), axis("p", {{"1.5", "1.5"}}));
    // 500 * 1.5 + 500 + 200 = 1450 kWh at 100 g
    EXPECT_EQ(m.cells[0][0].grams(), Decimal(145000));
    EXPECT_EQ(m.base[0].grams(), Decimal(100000));
}

TEST(Report, MonotoneAlongSortedAxes) {
    const auto r = table_report();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i + 1 < 3) EXPECT_LE(r.active.cells[i][j], r.active.cells[i + 1][j]);
            if (j + 1 < 3) EXPECT_LE(r.active.cells[i][j], r.active.cells[i][j + 1]);
        }
    // longer lifespans amortize to less
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j + 1 < 5; ++j) EXPECT_GE(r.embodied.snapshot[i][j], r.embodied.snapshot[i][j + 1]);
    for (std::size_t j = 0; j < 5; ++j) EXPECT_LE(r.embodied.snapshot[0][j], r.embodied.snapshot[1][j]);
}

TEST(Report, TotalsBoundEveryCombination) {
    const auto r = table_report();
    EXPECT_EQ(r.totals.min, r.active.at("Low", "1.1") + r.embodied.snapshot_at("400", "7"));
    EXPECT_EQ(r.totals.max, r.active.at("High", "1.6") + r.embodied.snapshot_at("1100", "3"));
    for (const auto& row : r.active.cells)
        for (const auto& a : row)
            for (const auto& erow : r.embodied.snapshot)
                for (const auto& e : erow) {
                    EXPECT_LE(r.totals.min, a + e);
                    EXPECT_GE(r.totals.max, a + e);
                }
    EXPECT_NEAR(r.totals.min.kg().to_double(), 1441, 1.0);
    EXPECT_NEAR(r.totals.max.kg().to_double(), 11711, 1.0);
}

TEST(Report, FlightEquivalents) {
    EXPECT_EQ(flight_equivalent(CarbonQuantity::from_kg(Decimal(2208))), Decimal(24));
    EXPECT_EQ(flight_equivalent(CarbonQuantity()), Decimal(0));
    EXPECT_EQ(flight_equivalent(CarbonQuantity::from_kg(Decimal(9302))).round_half_up(1), d("101.1"));
    const auto r = table_report();
    ASSERT_EQ(r.equivalents.size(), 2u);
    EXPECT_EQ(r.equivalents[1].quantity, r.totals.max.kg() / Decimal(92));
}

TEST(Report, EmptyMatricesRenderValidDocuments) {
    const auto r = build_report(ActiveEnergyBasis{}, intensities(), pues(), ScenarioAxis(), ScenarioAxis(), 1,
                                Decimal(1), AmortizationPolicy{}, {}, Provenance{});
    EXPECT_TRUE(r.embodied.snapshot.empty());
    const std::string json = render_json(r);
    EXPECT_EQ(parse_report_json(json), r);
    const std::string md = render_markdown(r);
    EXPECT_NE(md.find("Active Energy Carbon"), std::string::npos);
}

TEST(Report, JsonIsStableAndExact) {
    const auto r = table_report();
    const std::string a = render_json(r);
    EXPECT_EQ(a, render_json(table_report()));
    EXPECT_EQ(render_json(parse_report_json(a)), a);
    EXPECT_EQ(a.back(), '\n');
    // unrounded values survive
    EXPECT_NE(a.find("\"3391.5\""), std::string::npos);
    EXPECT_THROW(parse_report_json("{\"active_matrix\": 3}"), ParseError);
}

TEST(Report, MarkdownCarriesTableCells) {
    const auto r = table_report();
    const std::string md = render_markdown(r, MarkdownOptions{Rounding::truncate});
    for (const char* cell : {"969", "3392", "5814", "1066", "1260", "1550", "3731", "4409", "5426", "6395", "7558",
                             "9302", "876", "2409", "1806", "1445", "1032", "0.37", "0.43"})
        EXPECT_NE(md.find(cell), std::string::npos) << cell;
    EXPECT_NE(md.find("Server Lifespan (years)"), std::string::npos);
}

TEST(Report, FormatKg) {
    EXPECT_EQ(format_kg(CarbonQuantity::from_kg(d("525.9")), Rounding::truncate), "525");
    EXPECT_EQ(format_kg(CarbonQuantity::from_kg(d("525.9"))), "526");
    EXPECT_EQ(format_kg(CarbonQuantity::from_kg(d("0.365")), Rounding::half_up, 2), "0.37");
}
