#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "carbonsnap/report.hpp"
#include "commands.hpp"
#include "fixture_transport.hpp"
#include "test_util.hpp"

using namespace carbonsnap;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("carbonsnap-cli-" + std::to_string(::getpid()) + "-" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        transport_ = std::make_shared<testkit::FixtureTransport>(test::fixture_path("intensity_nov2022_synthetic.json"));
    }
    void TearDown() override { fs::remove_all(dir_); }

    CliResult run(const std::vector<std::string>& args) {
        std::ostringstream out, err;
        cli::Context ctx{out, err, [this](const std::string& k) -> std::optional<std::string> {
                             auto it = env_.find(k);
                             if (it == env_.end()) return std::nullopt;
                             return it->second;
                         },
                         transport_, {}};
        ctx.fetch_options.sleep = [](std::chrono::milliseconds) {};
        const int code = cli::run(args, ctx);
        return {code, out.str(), err.str()};
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

    fs::path dir_;
    std::map<std::string, std::string> env_;
    std::shared_ptr<testkit::FixtureTransport> transport_;
};

}  // namespace

TEST_F(Cli, IngestSixSites) {
    const auto r = run({"ingest", "-m", test::data_path("site_snapshot_measurements.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("18760"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("QMUL"), std::string::npos);
}

TEST_F(Cli, IngestNormalizedJsonFeedsBack) {
    const auto first = run({"ingest", "-m", test::data_path("site_snapshot_measurements.csv"), "--out", path("norm.json")});
    ASSERT_EQ(first.code, 0) << first.err;
    const auto second = run({"ingest", "-m", path("norm.json")});
    ASSERT_EQ(second.code, 0) << second.err;
    EXPECT_EQ(first.out, second.out);
}

TEST_F(Cli, IngestSamplesOnly) {
    const auto r = run({"ingest", "-s", test::fixture_path("samples_two_nodes.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("DUR"), std::string::npos);
    EXPECT_NE(r.out.find("ipmi"), std::string::npos);
}

TEST_F(Cli, MissingFileIsExitTwoAndNamesPath) {
    const auto r = run({"ingest", "-m", path("nope.csv")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("nope.csv"), std::string::npos) << r.err;
    const auto rep = run({"report", path("missing-config.json")});
    EXPECT_EQ(rep.code, 2);
    EXPECT_NE(rep.err.find("missing-config.json"), std::string::npos) << rep.err;
}

TEST_F(Cli, MalformedCsvIsExitTwoWithLine) {
    write("bad.csv", "site,source,period_start,period_end,kwh,nodes\nA,ipmi,2022-11-01T00:00Z,2022-11-02T00:00Z,x,1\n");
    const auto r = run({"ingest", "-m", path("bad.csv")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(":2:5:"), std::string::npos) << r.err;
}

TEST_F(Cli, UnknownFlagIsExitTwo) { EXPECT_EQ(run({"report", "--no-such-flag"}).code, 2); }

TEST_F(Cli, PaperCompatReportIsDeterministic) {
    const auto a = run({"report", test::data_path("paper_compat.json")});
    const auto b = run({"report", test::data_path("paper_compat.json")});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto report = parse_report_json(a.out);
    EXPECT_EQ(report.base_energy().kwh(), Decimal(19380));
    EXPECT_EQ(report.embodied.node_count, 2400);
}

TEST_F(Cli, PaperCompatFlagMatchesConfigFile) {
    const auto a = run({"report", test::data_path("paper_compat.json")});
    const auto b = run({"report", "--paper-compat"});
    ASSERT_EQ(b.code, 0) << b.err;
    const auto ra = parse_report_json(a.out);
    const auto rb = parse_report_json(b.out);
    EXPECT_EQ(ra.active, rb.active);
    EXPECT_EQ(ra.embodied, rb.embodied);
    EXPECT_EQ(ra.totals, rb.totals);
}

TEST_F(Cli, MarkdownOutputToFile) {
    const auto r = run({"report", "--paper-compat", "--format", "markdown", "-o", path("r.md")});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string md = test::slurp(path("r.md"));
    EXPECT_NE(md.find("9302"), std::string::npos);
    EXPECT_NE(md.find("Server Lifespan (years)"), std::string::npos);
}

TEST_F(Cli, ZeroLengthPeriodIsExitTwo) {
    write("zero.json", R"({"base_energy_kwh": 100, "period": {"start": "2022-11-01T00:00Z", "end": "2022-11-01T00:00Z"}})");
    EXPECT_EQ(run({"report", path("zero.json")}).code, 2);
    EXPECT_EQ(run({"report", "--base-energy", "100", "--period-start", "2022-11-01", "--period-end", "2022-11-01"}).code, 2);
}

TEST_F(Cli, UnknownConfigKeyIsExitTwo) {
    write("typo.json", R"({"base_energy": 100})");
    const auto r = run({"validate", path("typo.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("base_energy"), std::string::npos);
}

TEST_F(Cli, ValidateAcceptsPaperCompat) {
    const auto r = run({"validate", test::data_path("paper_compat.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("config OK"), std::string::npos);
}

TEST_F(Cli, ReportFromMeasurementsAndInventory) {
    write("run.json", R"({
      "measurements": ")" + test::data_path("site_snapshot_measurements.csv") + R"(",
      "inventory": ")" + test::data_path("inventory_example.json") + R"(",
      "period": {"start": "2022-11-01T00:00:00Z", "end": "2022-11-02T00:00:00Z"},
      "embodied": {"estimates": [400, 1100], "lifespans_years": [3, 5, 7]}
    })");
    const auto r = run({"report", path("run.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = parse_report_json(r.out);
    EXPECT_EQ(rep.base_energy().kwh(), Decimal(18760));
    // fleet size falls back to the inventory
    EXPECT_EQ(rep.embodied.node_count, 746);
    EXPECT_EQ(rep.provenance.inputs.at("measured_total_kwh"), "18760");
}

TEST_F(Cli, SeriesModeUsesTimeWeightedIntensity) {
    const auto fetched = run({"fetch-intensity", "--from", "2022-11-01", "--to", "2022-11-02", "-o", path("s.json"),
                              "--endpoint", "http://fixture"});
    ASSERT_EQ(fetched.code, 0) << fetched.err;
    const auto r = run({"report", "--base-energy", "240", "--period-start", "2022-11-01", "--period-end", "2022-11-02",
                        "--intensity-mode", "series", "--series", path("s.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = parse_report_json(r.out);
    ASSERT_EQ(rep.active.intensities.size(), 1u);
    // 10 kWh per hour spread over 48 half-hours
    const auto series = parse_intensity_json(test::slurp(path("s.json")));
    Decimal grams;
    for (const auto& p : series.periods()) grams += p.intensity.grams_per_kwh() * Decimal(5);
    EXPECT_EQ(rep.active.base[0].grams(), grams);
}

TEST_F(Cli, FetchNovemberGives48PerDay) {
    const auto r = run({"fetch-intensity", "--from", "2022-11-01", "--to", "2022-11-08", "-o", path("nov.json"),
                        "--endpoint", "http://fixture", "--csv", path("nov.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("periods: 336"), std::string::npos) << r.out;
    const auto s = parse_intensity_json(test::slurp(path("nov.json")));
    EXPECT_EQ(s.size(), 336u);
    EXPECT_TRUE(fs::exists(path("nov.csv")));
}

TEST_F(Cli, FetchOneDayAtMost48) {
    const auto r = run({"fetch-intensity", "--from", "2022-11-03T00:00Z", "--to", "2022-11-04T00:00Z", "-o", "-",
                        "--endpoint", "http://fixture"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(parse_intensity_json(r.out).size(), 48u);
    EXPECT_NE(r.err.find("periods: 48"), std::string::npos);
}

TEST_F(Cli, FetchInvertedRangeIsExitTwo) {
    const auto r = run({"fetch-intensity", "--from", "2022-11-02", "--to", "2022-11-01", "-o", path("x.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(transport_->calls(), 0);
    EXPECT_FALSE(fs::exists(path("x.json")));
}

TEST_F(Cli, FetchServerErrorIsExitThreeAndWritesNothing) {
    for (int i = 0; i < 3; ++i) transport_->queue({503, "busy"});
    const auto r = run({"fetch-intensity", "--from", "2022-11-01", "--to", "2022-11-02", "-o", path("x.json")});
    EXPECT_EQ(r.code, 3);
    EXPECT_FALSE(fs::exists(path("x.json")));
}

TEST_F(Cli, EndpointPrecedence) {
    run({"fetch-intensity", "--from", "2022-11-01", "--to", "2022-11-02", "-o", path("a.json")});
    env_["CARBONSNAP_INTENSITY_ENDPOINT"] = "http://from-env";
    run({"fetch-intensity", "--from", "2022-11-01", "--to", "2022-11-02", "-o", path("b.json")});
    run({"fetch-intensity", "--from", "2022-11-01", "--to", "2022-11-02", "-o", path("c.json"), "--endpoint",
         "http://from-flag"});
    const auto urls = transport_->urls();
    ASSERT_EQ(urls.size(), 3u);
    EXPECT_EQ(urls[0].rfind(carbonsnap::default_intensity_endpoint, 0), 0u) << urls[0];
    EXPECT_EQ(urls[1].rfind("http://from-env/intensity/", 0), 0u) << urls[1];
    EXPECT_EQ(urls[2].rfind("http://from-flag/intensity/", 0), 0u) << urls[2];
}

TEST_F(Cli, BinaryExitCodes) {
    const std::string bin = CARBONSNAP_CLI_PATH;
    const auto status = [&](const std::string& args) {
        const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("--version"), 0);
    EXPECT_EQ(status("report --paper-compat"), 0);
    EXPECT_EQ(status("ingest -m " + path("absent.csv")), 2);
    EXPECT_EQ(status("bogus-subcommand"), 2);
}
