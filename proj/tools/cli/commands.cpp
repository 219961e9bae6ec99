#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "carbonsnap/error.hpp"
#include "carbonsnap/intensity.hpp"

#ifndef CARBONSNAP_VERSION
#define CARBONSNAP_VERSION "0.0.0"
#endif

namespace carbonsnap::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw Error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path == "-") {
        out << content;
        out.flush();
    } else {
        write_file(path, content);
    }
}

std::vector<EnergyMeasurement> read_normalized(const fs::path& path) {
    json doc;
    try {
        doc = json::parse(slurp(path));
    } catch (const json::parse_error& e) {
        throw ParseError(path.string(), 0, 0, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("sites") || !doc.at("sites").is_array())
        throw ParseError(path.string(), 0, 0, "expected an object with a 'sites' array");
    // every measurement when present, else only the canonical per-site rows
    const json& rows = doc.contains("measurements") ? doc.at("measurements") : doc.at("sites");
    std::vector<EnergyMeasurement> out;
    try {
        for (const auto& s : rows)
            out.push_back(EnergyMeasurement{
                s.at("site").get<std::string>(), parse_measurement_source(s.at("source").get<std::string>()),
                SnapshotPeriod(parse_timestamp(s.at("period_start").get<std::string>()),
                               parse_timestamp(s.at("period_end").get<std::string>())),
                EnergyQuantity(Decimal::parse(s.at("kwh").get<std::string>())), s.at("nodes").get<std::int64_t>()});
    } catch (const json::exception& e) {
        throw ParseError(path.string(), 0, 0, e.what());
    } catch (const Error& e) {
        throw ParseError(path.string(), 0, 0, e.what());
    }
    return out;
}

std::vector<EnergyMeasurement> read_measurements(const fs::path& path) {
    if (!fs::is_regular_file(path)) throw ValidationError("measurements file not found: " + path.string());
    if (path.extension() == ".json") return read_normalized(path);
    std::ifstream in(path);
    return parse_measurements(in, path.string());
}

std::map<MeasurementSource, Decimal> parse_corrections(const std::vector<std::string>& specs) {
    std::map<MeasurementSource, Decimal> out;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw ValidationError("correction must look like source=factor, got '" + spec + "'");
        out[parse_measurement_source(spec.substr(0, eq))] = Decimal::parse(spec.substr(eq + 1));
    }
    return out;
}

std::string ratio_text(const Decimal& d) { return d.round_half_up(4).to_fixed(4); }

SnapshotPeriod parse_range_arg(const std::string& from, const std::string& to) {
    return SnapshotPeriod(parse_timestamp(from), parse_timestamp(to));
}

std::shared_ptr<Transport> transport_for(const Context& ctx) {
    return ctx.transport ? ctx.transport : make_http_transport();
}

std::string resolve_endpoint(const std::optional<std::string>& flag, const std::optional<std::string>& configured,
                             const Context& ctx) {
    if (flag) return *flag;
    if (ctx.getenv) {
        if (auto env = ctx.getenv(endpoint_env_var); env && !env->empty()) return *env;
    }
    if (configured) return *configured;
    return default_intensity_endpoint;
}

int report_error(const std::exception& e, Context& ctx) {
    if (dynamic_cast<const NetworkError*>(&e)) {
        ctx.err << "error: " << e.what() << "\n";
        return exit_network;
    }
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e)) {
        ctx.err << "error: " << e.what() << "\n";
        return exit_validation;
    }
    ctx.err << "error: " << e.what() << "\n";
    return exit_failure;
}

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
}

IngestResult ingest(const std::optional<fs::path>& measurements, const std::optional<fs::path>& samples,
                    MeasurementSource samples_source, const std::map<MeasurementSource, Decimal>& corrections) {
    if (!measurements && !samples) throw ValidationError("nothing to ingest: give a measurements or samples file");
    IngestResult r;
    if (measurements) r.raw = read_measurements(*measurements);
    if (samples) {
        if (!fs::is_regular_file(*samples)) throw ValidationError("samples file not found: " + samples->string());
        std::ifstream in(*samples);
        auto series = parse_samples(in, samples->string());
        for (auto& m : measurements_from_samples(series, samples_source)) r.raw.push_back(std::move(m));
    }
    r.raw = apply_corrections(std::move(r.raw), corrections);
    r.reports = reconcile_all(r.raw);
    r.canonical = canonical_measurements(r.reports);
    r.total = snapshot_energy(r.canonical);
    return r;
}

namespace {

json measurement_json(const EnergyMeasurement& m) {
    return json{{"site", m.site},
                {"source", std::string(to_string(m.source))},
                {"period_start", format_timestamp(m.period.start())},
                {"period_end", format_timestamp(m.period.end())},
                {"kwh", m.energy.kwh().to_string()},
                {"nodes", m.nodes_covered}};
}

}  // namespace

std::string normalized_json(const IngestResult& result) {
    json all = json::array();
    for (const auto& m : result.raw) all.push_back(measurement_json(m));
    json sites = json::array();
    for (const auto& rep : result.reports) {
        json ratios = json::object();
        for (const auto& [source, ratio] : rep.ratios) ratios[std::string(to_string(source))] = ratio.to_string();
        json site = measurement_json(rep.canonical);
        site["ratios"] = std::move(ratios);
        sites.push_back(std::move(site));
    }
    return json{{"measurements", std::move(all)}, {"sites", std::move(sites)},
                {"total_kwh", result.total.kwh().to_string()}}
               .dump(2) +
           "\n";
}

ScenarioReport evaluate(const RunConfig& config, const Context& ctx) {
    validate_config(config);
    Provenance provenance;
    provenance.tool_version = std::string("carbonsnap ") + CARBONSNAP_VERSION;
    auto& inputs = provenance.inputs;
    inputs["config"] = config.source;
    inputs["paper_compat"] = config.paper_compat ? "true" : "false";
    inputs["intensity_mode"] = std::string(to_string(config.intensity.mode));

    std::optional<IngestResult> ingested;
    if (config.measurements || config.samples) {
        ingested = ingest(config.measurements, config.samples, config.samples_source, config.corrections);
        if (config.measurements) inputs["measurements"] = config.measurements->generic_string();
        if (config.samples) inputs["samples"] = config.samples->generic_string();
        inputs["measured_total_kwh"] = ingested->total.kwh().to_string();
    }

    std::optional<SnapshotPeriod> period = config.period;
    if (!period && ingested && !ingested->canonical.empty()) period = ingested->canonical.front().period;
    if (period) inputs["period"] = to_string(*period);

    ActiveEnergyBasis basis;
    EnergyProfile profile;
    if (config.base_energy_kwh) {
        basis.nodes = EnergyQuantity(*config.base_energy_kwh);
        inputs["energy_source"] = "pinned";
        if (period) profile.emplace_back(*period, basis.nodes);
    } else {
        basis.nodes = ingested->total;
        inputs["energy_source"] = "measurements";
        for (const auto& m : ingested->canonical) profile.emplace_back(m.period, m.energy);
    }

    if (config.facilities) {
        if (config.base_energy_kwh)
            throw ValidationError("metered facilities energy cannot be combined with a pinned base energy");
        std::ifstream in(*config.facilities);
        const auto rows = parse_facilities(in, config.facilities->string());
        std::set<std::string> metered_sites;
        for (const auto& f : rows) {
            auto it = std::find_if(ingested->canonical.begin(), ingested->canonical.end(),
                                   [&](const EnergyMeasurement& m) { return m.site == f.site; });
            if (it == ingested->canonical.end())
                throw ValidationError("facilities energy for site '" + f.site + "' which has no IT measurement");
            if (!(it->period == f.period))
                throw ValidationError("facilities energy for site '" + f.site + "' covers a different period");
            basis.metered_facilities += f.energy;
            if (metered_sites.insert(f.site).second) basis.metered_it += it->energy;
        }
        inputs["facilities"] = config.facilities->generic_string();
    }

    std::vector<AxisPoint> intensity_points;
    switch (config.intensity.mode) {
        case IntensityMode::scenario: {
            ScenarioRegistry registry;
            for (const auto& c : config.intensity.custom) registry.add(c.label, CarbonIntensity(c.value));
            for (const auto& name : config.intensity.scenarios)
                intensity_points.push_back(AxisPoint{name, registry.lookup(name).grams_per_kwh()});
            break;
        }
        case IntensityMode::series:
        case IntensityMode::api: {
            IntensitySeries series;
            std::string label;
            if (config.intensity.mode == IntensityMode::series) {
                series = parse_intensity_json(slurp(*config.intensity.series_path),
                                              config.intensity.series_path->string());
                inputs["series"] = config.intensity.series_path->generic_string();
                label = "series";
            } else {
                if (!period) throw ValidationError("intensity api mode needs a period");
                FetchOptions options = ctx.fetch_options;
                if (config.intensity.cache_dir) options.cache_dir = config.intensity.cache_dir;
                const std::string endpoint = resolve_endpoint(std::nullopt, config.intensity.endpoint, ctx);
                series = IntensityClient(transport_for(ctx), options).fetch(*period, endpoint);
                inputs["endpoint"] = endpoint;
                label = "api";
            }
            std::size_t forecast = 0;
            for (const auto& p : series.periods()) forecast += p.field == IntensityField::forecast ? 1 : 0;
            inputs["intensity_periods"] = std::to_string(series.size());
            inputs["intensity_forecast_periods"] = std::to_string(forecast);
            if (profile.empty()) throw ValidationError("time-weighted intensity needs a period");
            const EnergyQuantity total = std::accumulate(
                profile.begin(), profile.end(), EnergyQuantity(),
                [](const EnergyQuantity& acc, const auto& entry) { return acc + entry.second; });
            Decimal effective;
            if (total.kwh().is_zero()) {
                EnergyProfile unit;
                for (const auto& [span, _] : profile) unit.emplace_back(span, EnergyQuantity(Decimal(1)));
                effective = time_weighted_carbon(unit, series).grams() / Decimal(static_cast<std::int64_t>(unit.size()));
            } else {
                effective = time_weighted_carbon(profile, series).grams() / total.kwh();
            }
            intensity_points.push_back(AxisPoint{label, effective});
            break;
        }
    }

    std::int64_t node_count = 0;
    if (config.inventory) {
        const Inventory inventory = parse_inventory(slurp(*config.inventory), config.inventory->string());
        inputs["inventory"] = config.inventory->generic_string();
        inputs["inventory_nodes"] = std::to_string(inventory.node_count());
        node_count = inventory.node_count();
        bool complete = !inventory.sites().empty();
        for (const auto& s : inventory.sites())
            for (const auto& g : s.node_groups) complete = complete && g.embodied_kg_per_node && g.lifespan_years;
        if (complete && period)
            inputs["inventory_fleet_embodied_kg"] =
                fleet_embodied(inventory, *period, config.amortization).kg().to_string();
    }
    if (config.node_count) node_count = *config.node_count;

    const Decimal period_days = period ? period->duration_days() : Decimal(1);
    std::vector<EquivalenceFactor> factors{flight_factor()};
    factors.insert(factors.end(), config.equivalents.begin(), config.equivalents.end());

    const ScenarioAxis intensities("intensity", intensity_points);
    const ScenarioAxis pues("pue", config.pue_axis);
    ScenarioAxis estimates;
    ScenarioAxis lifespans;
    if (!config.embodied_estimates.empty()) {
        estimates = ScenarioAxis("embodied_estimate", config.embodied_estimates);
        lifespans = ScenarioAxis("lifespan", config.lifespans);
    }
    return build_report(basis, intensities, pues, estimates, lifespans, node_count, period_days, config.amortization,
                        factors, std::move(provenance));
}

std::string render(const ScenarioReport& report, const OutputConfig& output) {
    if (output.format == OutputFormat::json) return render_json(report);
    return render_markdown(report, MarkdownOptions{output.embodied_rounding});
}

namespace {

struct ReportFlags {
    std::string config;
    bool paper_compat = false;
    std::optional<std::string> inventory, measurements, samples, facilities, base_energy, intensity_mode, series,
        endpoint, cache_dir, node_count, days_per_year, period_start, period_end, format, output, embodied_rounding;
    std::vector<std::string> scenarios, pues, estimates, lifespans, corrections;
};

RunConfig config_from_flags(const ReportFlags& f, const Context& ctx) {
    RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
    if (auto env = ctx.getenv ? ctx.getenv(endpoint_env_var) : std::nullopt; env && !env->empty() &&
                                                                         c.intensity.mode == IntensityMode::api)
        c.intensity.endpoint = *env;
    if (f.inventory) c.inventory = *f.inventory;
    if (f.measurements) c.measurements = *f.measurements;
    if (f.samples) c.samples = *f.samples;
    if (f.facilities) c.facilities = *f.facilities;
    if (f.base_energy) c.base_energy_kwh = Decimal::parse(*f.base_energy);
    if (f.intensity_mode) {
        const IntensityMode mode = parse_intensity_mode(*f.intensity_mode);
        if (mode != c.intensity.mode) {
            c.intensity = IntensityConfig{};
            c.intensity.mode = mode;
        }
    }
    if (!f.scenarios.empty()) c.intensity.scenarios = f.scenarios;
    if (f.series) c.intensity.series_path = *f.series;
    if (f.endpoint) c.intensity.endpoint = *f.endpoint;
    if (f.cache_dir) c.intensity.cache_dir = *f.cache_dir;
    if (!f.pues.empty()) {
        c.pue_axis.clear();
        for (const auto& p : f.pues) c.pue_axis.push_back(parse_axis_point(p));
    }
    if (!f.estimates.empty()) {
        c.embodied_estimates.clear();
        for (const auto& p : f.estimates) c.embodied_estimates.push_back(parse_axis_point(p));
    }
    if (!f.lifespans.empty()) {
        c.lifespans.clear();
        for (const auto& p : f.lifespans) c.lifespans.push_back(parse_axis_point(p));
    }
    if (f.node_count) {
        const Decimal n = Decimal::parse(*f.node_count);
        if (!n.is_integer() || n < Decimal(1)) throw ValidationError("--node-count must be a positive integer");
        c.node_count = n.raw().convert_to<std::int64_t>();
    }
    if (f.days_per_year) c.amortization.days_per_year = Decimal::parse(*f.days_per_year);
    if (f.period_start || f.period_end) {
        if (!f.period_start || !f.period_end) throw ValidationError("--period-start and --period-end go together");
        c.period = SnapshotPeriod(parse_timestamp(*f.period_start), parse_timestamp(*f.period_end));
    }
    if (!f.corrections.empty()) c.corrections = parse_corrections(f.corrections);
    if (f.paper_compat) apply_paper_compat(c);
    if (f.format) {
        if (*f.format == "json") c.output.format = OutputFormat::json;
        else if (*f.format == "markdown") c.output.format = OutputFormat::markdown;
        else throw ValidationError("--format must be json or markdown");
    }
    if (f.output) c.output.path = *f.output;
    if (f.embodied_rounding) {
        if (*f.embodied_rounding == "half_up") c.output.embodied_rounding = Rounding::half_up;
        else if (*f.embodied_rounding == "truncate") c.output.embodied_rounding = Rounding::truncate;
        else throw ValidationError("--embodied-rounding must be half_up or truncate");
    }
    if (c.source == "-" && f.paper_compat) c.source = "--paper-compat";
    return c;
}

void add_report_flags(CLI::App* cmd, ReportFlags& f) {
    cmd->add_option("config", f.config, "Run configuration (JSON)");
    cmd->add_flag("--paper-compat", f.paper_compat,
                  "Pin the published-table constants (19380 kWh, PUE high 1.6, 2400 servers, truncated embodied cells)");
    cmd->add_option("--inventory", f.inventory, "Inventory JSON");
    cmd->add_option("--measurements", f.measurements, "Measurements CSV or normalized JSON");
    cmd->add_option("--samples", f.samples, "Power samples CSV");
    cmd->add_option("--facilities", f.facilities, "Metered facilities energy CSV");
    cmd->add_option("--base-energy", f.base_energy, "Pin IT energy (kWh)");
    cmd->add_option("--intensity-mode", f.intensity_mode, "scenario | series | api");
    cmd->add_option("--scenario", f.scenarios, "Intensity scenario name (repeatable)");
    cmd->add_option("--series", f.series, "Intensity series JSON (series mode)");
    cmd->add_option("--endpoint", f.endpoint, "Intensity API base URL (api mode)");
    cmd->add_option("--cache-dir", f.cache_dir, "Intensity response cache directory");
    cmd->add_option("--pue", f.pues, "PUE point label=value (repeatable)");
    cmd->add_option("--estimate", f.estimates, "Embodied estimate label=kg (repeatable)");
    cmd->add_option("--lifespan", f.lifespans, "Lifespan label=years (repeatable)");
    cmd->add_option("--node-count", f.node_count, "Servers for the embodied matrix");
    cmd->add_option("--days-per-year", f.days_per_year, "Amortization days per year");
    cmd->add_option("--period-start", f.period_start, "Snapshot start (ISO-8601 UTC)");
    cmd->add_option("--period-end", f.period_end, "Snapshot end (ISO-8601 UTC)");
    cmd->add_option("--correct", f.corrections, "Per-source multiplier source=factor (repeatable)");
    cmd->add_option("--format", f.format, "json | markdown");
    cmd->add_option("--output,-o", f.output, "Output path, '-' for stdout");
    cmd->add_option("--embodied-rounding", f.embodied_rounding, "half_up | truncate");
}

int do_ingest(const std::optional<std::string>& measurements, const std::optional<std::string>& samples,
              const std::string& samples_source, const std::vector<std::string>& corrections,
              const std::optional<std::string>& out_path, Context& ctx) {
    const IngestResult r =
        ingest(measurements ? std::optional<fs::path>(*measurements) : std::nullopt,
               samples ? std::optional<fs::path>(*samples) : std::nullopt,
               parse_measurement_source(samples_source), parse_corrections(corrections));
    std::ostringstream table;
    table << std::left << std::setw(14) << "site" << std::setw(11) << "source" << std::right << std::setw(14) << "kWh"
          << std::setw(8) << "nodes" << "  ratios\n";
    for (const auto& rep : r.reports) {
        table << std::left << std::setw(14) << rep.site << std::setw(11) << to_string(rep.canonical.source) << std::right
              << std::setw(14) << rep.canonical.energy.kwh().round_half_up(3).to_string() << std::setw(8)
              << rep.canonical.nodes_covered << " ";
        for (const auto& [source, ratio] : rep.ratios) table << " " << to_string(source) << "=" << ratio_text(ratio);
        table << "\n";
    }
    table << std::left << std::setw(25) << "total" << std::right << std::setw(14)
          << r.total.kwh().round_half_up(3).to_string() << "\n";
    ctx.out << table.str();
    if (out_path) emit(*out_path, normalized_json(r), ctx.out);
    return exit_ok;
}

int do_fetch(const std::string& from, const std::string& to, const std::optional<std::string>& endpoint_flag,
             const std::string& out_path, const std::optional<std::string>& cache_dir,
             const std::optional<std::string>& csv_path, Context& ctx) {
    const SnapshotPeriod range = parse_range_arg(from, to);
    FetchOptions options = ctx.fetch_options;
    if (cache_dir) options.cache_dir = fs::path(*cache_dir);
    const std::string endpoint = resolve_endpoint(endpoint_flag, std::nullopt, ctx);
    const IntensitySeries series = IntensityClient(transport_for(ctx), options).fetch(range, endpoint);

    // only write once the whole range is in hand
    std::ostream& info = out_path == "-" ? ctx.err : ctx.out;
    emit(out_path, intensity_to_json(series), ctx.out);
    if (csv_path) emit(*csv_path, intensity_to_csv(series), ctx.out);
    info << "periods: " << series.size() << "\n";
    if (!series.empty()) {
        const IntensityStats s = summarize(series);
        info << "min: " << s.min.grams_per_kwh().to_string() << " gCO2e/kWh\n"
             << "mean: " << s.mean.round_half_up(2).to_fixed(2) << " gCO2e/kWh\n"
             << "max: " << s.max.grams_per_kwh().to_string() << " gCO2e/kWh\n";
    }
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, Context& ctx) {
    CLI::App app{"Carbon accounting for data-centre snapshots: active + embodied carbon scenarios", "carbonsnap"};
    app.set_version_flag("--version", std::string("carbonsnap ") + CARBONSNAP_VERSION);
    app.require_subcommand(1);

    // ingest
    std::optional<std::string> in_measurements, in_samples, in_out;
    std::string in_samples_source = "ipmi";
    std::vector<std::string> in_corrections;
    auto* ingest_cmd = app.add_subcommand("ingest", "Reconcile measurements and print canonical per-site energy");
    ingest_cmd->add_option("--measurements,-m", in_measurements, "Measurements CSV");
    ingest_cmd->add_option("--samples,-s", in_samples, "Power samples CSV");
    ingest_cmd->add_option("--samples-source", in_samples_source, "Source tag for integrated samples");
    ingest_cmd->add_option("--correct", in_corrections, "Per-source multiplier source=factor (repeatable)");
    ingest_cmd->add_option("--out", in_out, "Write normalized measurements JSON here ('-' for stdout)");

    // report
    ReportFlags report_flags;
    auto* report_cmd = app.add_subcommand("report", "Evaluate the scenario matrix and write a report");
    add_report_flags(report_cmd, report_flags);

    // validate
    ReportFlags validate_flags;
    auto* validate_cmd = app.add_subcommand("validate", "Check a run configuration without evaluating it");
    add_report_flags(validate_cmd, validate_flags);

    // fetch-intensity
    std::string fi_from, fi_to, fi_out;
    std::optional<std::string> fi_endpoint, fi_cache, fi_csv;
    auto* fetch_cmd = app.add_subcommand("fetch-intensity", "Download half-hourly grid intensity to a series file");
    fetch_cmd->add_option("--from", fi_from, "Range start (ISO-8601 UTC or date)")->required();
    fetch_cmd->add_option("--to", fi_to, "Range end (ISO-8601 UTC or date)")->required();
    fetch_cmd->add_option("--endpoint", fi_endpoint, std::string("API base URL (default $") + endpoint_env_var +
                                                         " or " + default_intensity_endpoint + ")");
    fetch_cmd->add_option("--out,-o", fi_out, "Series JSON output path, '-' for stdout")->required();
    fetch_cmd->add_option("--cache-dir", fi_cache, "Response cache directory");
    fetch_cmd->add_option("--csv", fi_csv, "Also write a CSV copy for plotting");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("carbonsnap");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, ctx.out, ctx.err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, ctx.out, ctx.err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, ctx.out, ctx.err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, ctx.out, ctx.err);
        return exit_validation;
    }

    try {
        if (*ingest_cmd)
            return do_ingest(in_measurements, in_samples, in_samples_source, in_corrections, in_out, ctx);
        if (*report_cmd) {
            const RunConfig config = config_from_flags(report_flags, ctx);
            const ScenarioReport report = evaluate(config, ctx);
            emit(config.output.path, render(report, config.output), ctx.out);
            return exit_ok;
        }
        if (*validate_cmd) {
            const RunConfig config = config_from_flags(validate_flags, ctx);
            validate_config(config);
            if (config.inventory) parse_inventory(slurp(*config.inventory), config.inventory->string());
            if (config.measurements) read_measurements(*config.measurements);
            if (config.samples) {
                std::ifstream in(*config.samples);
                parse_samples(in, config.samples->string());
            }
            if (config.facilities) {
                std::ifstream in(*config.facilities);
                parse_facilities(in, config.facilities->string());
            }
            if (config.intensity.series_path)
                parse_intensity_json(slurp(*config.intensity.series_path), config.intensity.series_path->string());
            ctx.out << "config OK\n";
            return exit_ok;
        }
        if (*fetch_cmd) return do_fetch(fi_from, fi_to, fi_endpoint, fi_out, fi_cache, fi_csv, ctx);
    } catch (const std::exception& e) {
        return report_error(e, ctx);
    }
    return exit_failure;
}

}  // namespace carbonsnap::cli
