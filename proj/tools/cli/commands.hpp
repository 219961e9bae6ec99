#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "carbonsnap/intensity_client.hpp"
#include "carbonsnap/report.hpp"
#include "carbonsnap/telemetry.hpp"
#include "config.hpp"

namespace carbonsnap::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_validation = 2;
inline constexpr int exit_network = 3;

inline constexpr const char* endpoint_env_var = "CARBONSNAP_INTENSITY_ENDPOINT";

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::function<std::optional<std::string>(const std::string&)> getenv;
    // Null means the cpp-httplib transport.
    std::shared_ptr<Transport> transport;
    FetchOptions fetch_options;
};

// Environment lookup through ::getenv.
std::optional<std::string> process_env(const std::string& name);

struct IngestResult {
    std::vector<EnergyMeasurement> raw;
    std::vector<ReconciliationReport> reports;
    std::vector<EnergyMeasurement> canonical;
    EnergyQuantity total;
};

// Reads a measurements CSV (or a normalized JSON written by `ingest`)
// and/or a samples CSV, applies corrections, reconciles per site and sums.
IngestResult ingest(const std::optional<std::filesystem::path>& measurements,
                    const std::optional<std::filesystem::path>& samples, MeasurementSource samples_source,
                    const std::map<MeasurementSource, Decimal>& corrections);

std::string normalized_json(const IngestResult& result);

// Runs ingest -> intensity -> matrices -> totals for a validated config.
ScenarioReport evaluate(const RunConfig& config, const Context& ctx);

std::string render(const ScenarioReport& report, const OutputConfig& output);

// Entry point shared by main() and the tests. Returns the process exit code.
int run(const std::vector<std::string>& args, Context& ctx);

}  // namespace carbonsnap::cli
