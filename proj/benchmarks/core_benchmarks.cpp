#include <benchmark/benchmark.h>

#include <chrono>
#include <sstream>

#include "carbonsnap/intensity.hpp"
#include "carbonsnap/report.hpp"
#include "carbonsnap/telemetry.hpp"

using namespace carbonsnap;

namespace {

const Timestamp t0 = parse_timestamp("2022-11-01T00:00Z");

PowerSampleSeries samples(std::int64_t n) {
    std::vector<PowerSample> v;
    v.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k)
        v.push_back({t0 + std::chrono::seconds(10 * k), Decimal::ratio(300'000 + (k * 7919) % 90'000, 1000)});
    return PowerSampleSeries("S", "n", std::move(v));
}

IntensitySeries half_hours(int days) {
    std::vector<IntensityPeriod> v;
    for (int k = 0; k < days * 48; ++k)
        v.push_back({t0 + std::chrono::minutes(30 * k), t0 + std::chrono::minutes(30 * (k + 1)),
                     CarbonIntensity(Decimal(100 + (k * 37) % 250)), IntensityField::actual, std::nullopt});
    return IntensitySeries(std::move(v));
}

ScenarioAxis axis(const std::string& name, std::int64_t n, std::int64_t start, std::int64_t step, std::int64_t den) {
    std::vector<AxisPoint> pts;
    for (std::int64_t k = 0; k < n; ++k) pts.push_back({name + std::to_string(k), Decimal::ratio(start + k * step, den)});
    return ScenarioAxis(name, std::move(pts));
}

}  // namespace

static void BM_IntegratePower(benchmark::State& state) {
    const auto s = samples(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(integrate_power(s));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IntegratePower)->Arg(1'000)->Arg(8'640);

static void BM_TimeWeightedCarbon(benchmark::State& state) {
    const int days = static_cast<int>(state.range(0));
    const auto series = half_hours(days);
    EnergyProfile profile;
    for (int h = 0; h < days * 24; ++h)
        profile.emplace_back(SnapshotPeriod(t0 + std::chrono::hours(h), t0 + std::chrono::hours(h + 1)),
                             EnergyQuantity(Decimal::ratio(800 + h % 50, 1)));
    for (auto _ : state) benchmark::DoNotOptimize(time_weighted_carbon(profile, series));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(profile.size()));
}
BENCHMARK(BM_TimeWeightedCarbon)->Arg(1)->Arg(31);

static void BM_BuildReport(benchmark::State& state) {
    const auto n = state.range(0);
    const ActiveEnergyBasis basis{EnergyQuantity(Decimal(19380)), {}, {}, {}};
    const auto ci = axis("ci", n, 50, 25, 1);
    const auto pue = axis("pue", n, 110, 5, 100);
    const auto est = axis("est", n, 400, 100, 1);
    const auto life = axis("life", n, 3, 1, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_report(basis, ci, pue, est, life, 2400, Decimal(1), AmortizationPolicy{},
                                              {flight_factor()}, Provenance{}));
}
BENCHMARK(BM_BuildReport)->Arg(3)->Arg(10);

static void BM_RenderJson(benchmark::State& state) {
    const auto report = build_report(ActiveEnergyBasis{EnergyQuantity(Decimal(19380)), {}, {}, {}},
                                     axis("ci", 3, 50, 125, 1), axis("pue", 3, 110, 20, 100), axis("est", 2, 400, 700, 1),
                                     axis("life", 5, 3, 1, 1), 2400, Decimal(1), AmortizationPolicy{}, {flight_factor()},
                                     Provenance{});
    for (auto _ : state) benchmark::DoNotOptimize(render_json(report));
}
BENCHMARK(BM_RenderJson);

static void BM_ParseMeasurementsCsv(benchmark::State& state) {
    std::ostringstream csv;
    csv << "site,source,period_start,period_end,kwh,nodes\n";
    for (std::int64_t k = 0; k < state.range(0); ++k)
        csv << "SITE" << k << ",ipmi,2022-11-01T00:00:00Z,2022-11-02T00:00:00Z," << 100 + k % 900 << ".25,"
            << 1 + k % 400 << "\n";
    const std::string text = csv.str();
    for (auto _ : state) {
        std::istringstream in(text);
        benchmark::DoNotOptimize(parse_measurements(in));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseMeasurementsCsv)->Arg(1'000);

static void BM_ParseSamplesCsv(benchmark::State& state) {
    std::ostringstream csv;
    csv << "site,node_id,timestamp,watts\n";
    for (std::int64_t k = 0; k < state.range(0); ++k)
        csv << "DUR,cn" << k % 16 << "," << format_timestamp(t0 + std::chrono::seconds(60 * (k / 16))) << ","
            << 250 + k % 100 << ".5\n";
    const std::string text = csv.str();
    for (auto _ : state) {
        std::istringstream in(text);
        benchmark::DoNotOptimize(parse_samples(in));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseSamplesCsv)->Arg(10'000);
BENCHMARK_MAIN();
