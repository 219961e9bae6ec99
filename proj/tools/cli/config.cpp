#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "carbonsnap/error.hpp"

namespace carbonsnap::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

Decimal to_decimal(const json& v, const std::string& where) {
    if (v.is_number()) return Decimal::parse(v.dump());
    if (v.is_string()) {
        try {
            return Decimal::parse(v.get<std::string>());
        } catch (const ParseError&) {
        }
    }
    throw ValidationError(where + ": expected a number, got " + v.dump());
}

std::string to_str(const json& v, const std::string& where) {
    if (!v.is_string()) throw ValidationError(where + ": expected a string, got " + v.dump());
    return v.get<std::string>();
}

void reject_unknown(const json& object, const std::set<std::string>& allowed, const std::string& where) {
    if (!object.is_object()) throw ValidationError(where + ": expected an object");
    for (const auto& [key, _] : object.items())
        if (!allowed.count(key)) throw ValidationError(where + ": unknown key '" + key + "'");
}

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::vector<AxisPoint> parse_points(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ValidationError(where + ": expected an array");
    std::vector<AxisPoint> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& p = arr[i];
        const std::string w = where + "[" + std::to_string(i) + "]";
        if (p.is_object()) {
            reject_unknown(p, {"label", "value"}, w);
            if (!p.contains("value")) throw ValidationError(w + ": missing 'value'");
            const Decimal value = to_decimal(p.at("value"), w + ".value");
            out.push_back(AxisPoint{p.contains("label") ? to_str(p.at("label"), w + ".label") : value.to_string(), value});
        } else {
            const Decimal value = to_decimal(p, w);
            out.push_back(AxisPoint{value.to_string(), value});
        }
    }
    return out;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void require_file(const std::optional<fs::path>& path, const char* what) {
    if (path && !fs::is_regular_file(*path))
        throw ValidationError(std::string(what) + " file not found: " + path->string());
}

}  // namespace

std::string_view to_string(IntensityMode mode) {
    switch (mode) {
        case IntensityMode::scenario: return "scenario";
        case IntensityMode::series: return "series";
        case IntensityMode::api: return "api";
    }
    return "scenario";
}

IntensityMode parse_intensity_mode(std::string_view text) {
    if (text == "scenario") return IntensityMode::scenario;
    if (text == "series") return IntensityMode::series;
    if (text == "api") return IntensityMode::api;
    throw ValidationError("unknown intensity mode '" + std::string(text) + "' (expected scenario, series or api)");
}

AxisPoint parse_axis_point(const std::string& text) {
    if (auto eq = text.find('='); eq != std::string::npos) {
        const std::string label = text.substr(0, eq);
        if (label.empty()) throw ValidationError("empty label in '" + text + "'");
        return AxisPoint{label, Decimal::parse(text.substr(eq + 1))};
    }
    const Decimal value = Decimal::parse(text);
    return AxisPoint{value.to_string(), value};
}

RunConfig parse_config(const std::string& text, const fs::path& base_dir, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin, 0, 0, std::string("invalid JSON: ") + e.what());
    }
    RunConfig c;
    c.source = origin;
    try {
        reject_unknown(doc,
                       {"inventory", "measurements", "samples", "facilities", "samples_source", "corrections",
                        "base_energy_kwh", "period", "intensity", "pue_axis", "embodied", "amortization",
                        "equivalents", "output"},
                       "config");
        auto path_key = [&](const char* key) -> std::optional<fs::path> {
            if (!doc.contains(key)) return std::nullopt;
            return resolve(base_dir, to_str(doc.at(key), key));
        };
        c.inventory = path_key("inventory");
        c.measurements = path_key("measurements");
        c.samples = path_key("samples");
        c.facilities = path_key("facilities");
        if (doc.contains("samples_source"))
            c.samples_source = parse_measurement_source(to_str(doc.at("samples_source"), "samples_source"));
        if (doc.contains("corrections")) {
            const json& corr = doc.at("corrections");
            if (!corr.is_object()) throw ValidationError("corrections: expected an object");
            for (const auto& [k, v] : corr.items())
                c.corrections[parse_measurement_source(k)] = to_decimal(v, "corrections." + k);
        }
        if (doc.contains("base_energy_kwh")) c.base_energy_kwh = to_decimal(doc.at("base_energy_kwh"), "base_energy_kwh");
        if (doc.contains("period")) {
            const json& p = doc.at("period");
            reject_unknown(p, {"start", "end"}, "period");
            if (!p.contains("start") || !p.contains("end")) throw ValidationError("period: needs 'start' and 'end'");
            c.period = SnapshotPeriod(parse_timestamp(to_str(p.at("start"), "period.start")),
                                      parse_timestamp(to_str(p.at("end"), "period.end")));
        }
        if (doc.contains("intensity")) {
            const json& in = doc.at("intensity");
            if (!in.is_object() || !in.contains("mode")) throw ValidationError("intensity: needs a 'mode'");
            c.intensity.mode = parse_intensity_mode(to_str(in.at("mode"), "intensity.mode"));
            switch (c.intensity.mode) {
                case IntensityMode::scenario:
                    reject_unknown(in, {"mode", "scenarios", "custom"}, "intensity (scenario mode)");
                    if (in.contains("custom")) {
                        c.intensity.custom = parse_points(in.at("custom"), "intensity.custom");
                        c.intensity.scenarios.clear();
                        for (const auto& p : c.intensity.custom) c.intensity.scenarios.push_back(p.label);
                    }
                    if (in.contains("scenarios")) {
                        const json& names = in.at("scenarios");
                        if (!names.is_array()) throw ValidationError("intensity.scenarios: expected an array");
                        c.intensity.scenarios.clear();
                        for (const auto& n : names) c.intensity.scenarios.push_back(to_str(n, "intensity.scenarios"));
                    }
                    break;
                case IntensityMode::series:
                    reject_unknown(in, {"mode", "path"}, "intensity (series mode)");
                    if (!in.contains("path")) throw ValidationError("intensity: series mode needs 'path'");
                    c.intensity.series_path = resolve(base_dir, to_str(in.at("path"), "intensity.path"));
                    break;
                case IntensityMode::api:
                    reject_unknown(in, {"mode", "endpoint", "cache_dir"}, "intensity (api mode)");
                    if (in.contains("endpoint")) c.intensity.endpoint = to_str(in.at("endpoint"), "intensity.endpoint");
                    if (in.contains("cache_dir"))
                        c.intensity.cache_dir = resolve(base_dir, to_str(in.at("cache_dir"), "intensity.cache_dir"));
                    break;
            }
        }
        if (doc.contains("pue_axis")) c.pue_axis = parse_points(doc.at("pue_axis"), "pue_axis");
        if (doc.contains("embodied")) {
            const json& e = doc.at("embodied");
            reject_unknown(e, {"estimates", "lifespans_years", "node_count"}, "embodied");
            if (e.contains("estimates")) c.embodied_estimates = parse_points(e.at("estimates"), "embodied.estimates");
            if (e.contains("lifespans_years")) c.lifespans = parse_points(e.at("lifespans_years"), "embodied.lifespans_years");
            if (e.contains("node_count")) {
                const json& n = e.at("node_count");
                if (!n.is_number_integer() || n.get<std::int64_t>() < 1)
                    throw ValidationError("embodied.node_count: expected a positive integer");
                c.node_count = n.get<std::int64_t>();
            }
        }
        if (doc.contains("amortization")) {
            const json& a = doc.at("amortization");
            reject_unknown(a, {"rule", "days_per_year"}, "amortization");
            if (a.contains("rule") && to_str(a.at("rule"), "amortization.rule") != "linear_by_time")
                throw ValidationError("amortization.rule: only 'linear_by_time' is supported");
            if (a.contains("days_per_year"))
                c.amortization.days_per_year = to_decimal(a.at("days_per_year"), "amortization.days_per_year");
        }
        if (doc.contains("equivalents")) {
            const json& arr = doc.at("equivalents");
            if (!arr.is_array()) throw ValidationError("equivalents: expected an array");
            for (const auto& q : arr) {
                reject_unknown(q, {"name", "kg_per_unit", "unit"}, "equivalents");
                if (!q.contains("name") || !q.contains("kg_per_unit") || !q.contains("unit"))
                    throw ValidationError("equivalents: entries need name, kg_per_unit and unit");
                c.equivalents.push_back(EquivalenceFactor{to_str(q.at("name"), "equivalents.name"),
                                                          to_decimal(q.at("kg_per_unit"), "equivalents.kg_per_unit"),
                                                          to_str(q.at("unit"), "equivalents.unit")});
            }
        }
        if (doc.contains("output")) {
            const json& o = doc.at("output");
            reject_unknown(o, {"format", "path", "embodied_rounding"}, "output");
            if (o.contains("format")) {
                const std::string f = to_str(o.at("format"), "output.format");
                if (f == "json") c.output.format = OutputFormat::json;
                else if (f == "markdown") c.output.format = OutputFormat::markdown;
                else throw ValidationError("output.format: expected json or markdown");
            }
            if (o.contains("path")) {
                const std::string p = to_str(o.at("path"), "output.path");
                c.output.path = p == "-" ? p : resolve(base_dir, p).string();
            }
            if (o.contains("embodied_rounding")) {
                const std::string r = to_str(o.at("embodied_rounding"), "output.embodied_rounding");
                if (r == "half_up") c.output.embodied_rounding = Rounding::half_up;
                else if (r == "truncate") c.output.embodied_rounding = Rounding::truncate;
                else throw ValidationError("output.embodied_rounding: expected half_up or truncate");
            }
        }
    } catch (const ParseError& e) {
        throw ParseError(origin, 0, 0, e.what());
    } catch (const Error& e) {
        throw ParseError(origin, 0, 0, e.what());
    }
    return c;
}

RunConfig load_config(const fs::path& path) {
    if (!fs::is_regular_file(path)) throw ValidationError("config file not found: " + path.string());
    return parse_config(slurp(path), path.parent_path().empty() ? fs::path(".") : path.parent_path(), path.string());
}

void apply_paper_compat(RunConfig& c) {
    c.paper_compat = true;
    c.base_energy_kwh = Decimal(19380);
    c.intensity = IntensityConfig{};
    c.intensity.scenarios = {"Low", "Medium", "High"};
    c.pue_axis = {{"Low", Decimal::parse("1.1")}, {"Medium", Decimal::parse("1.3")}, {"High", Decimal::parse("1.6")}};
    c.embodied_estimates = {{"400", Decimal(400)}, {"1100", Decimal(1100)}};
    c.lifespans.clear();
    for (int years = 3; years <= 7; ++years) c.lifespans.push_back(AxisPoint{std::to_string(years), Decimal(years)});
    c.node_count = 2400;
    c.amortization = AmortizationPolicy{};
    c.output.embodied_rounding = Rounding::truncate;
    if (!c.period) {
        const Timestamp start = parse_timestamp("2022-11-01T00:00:00Z");
        c.period = SnapshotPeriod(start, start + std::chrono::hours(24));
    }
}

void validate_config(const RunConfig& c) {
    require_file(c.inventory, "inventory");
    require_file(c.measurements, "measurements");
    require_file(c.samples, "samples");
    require_file(c.facilities, "facilities");
    c.amortization.validate();
    const auto& in = c.intensity;
    if (in.mode == IntensityMode::series) {
        if (!in.series_path) throw ValidationError("intensity series mode needs a series file");
        require_file(in.series_path, "intensity series");
    }
    if (in.mode != IntensityMode::series && in.series_path)
        throw ValidationError("a series file is only used in intensity series mode");
    if (in.mode != IntensityMode::api && (in.endpoint || in.cache_dir))
        throw ValidationError("endpoint/cache_dir are only used in intensity api mode");
    if (in.mode == IntensityMode::scenario && in.scenarios.empty())
        throw ValidationError("intensity scenario mode needs at least one scenario");
    if (!c.base_energy_kwh && !c.measurements && !c.samples)
        throw ValidationError("no energy source: give measurements, samples or base_energy_kwh");
    if (c.base_energy_kwh && c.base_energy_kwh->is_negative())
        throw ValidationError("base_energy_kwh must be non-negative");
    if (in.mode != IntensityMode::scenario && !c.period && !c.measurements && !c.samples)
        throw ValidationError("intensity " + std::string(to_string(in.mode)) +
                              " mode needs a period (from the config or the measurements)");
    ScenarioAxis("pue", c.pue_axis);
    for (const auto& p : c.pue_axis) PueFactor{p.value};
    if (c.embodied_estimates.empty() != c.lifespans.empty())
        throw ValidationError("embodied: give both estimates and lifespans_years, or neither");
    if (!c.embodied_estimates.empty()) {
        ScenarioAxis("embodied_estimate", c.embodied_estimates);
        ScenarioAxis("lifespan", c.lifespans);
        if (!c.node_count && !c.inventory) throw ValidationError("embodied: needs node_count or an inventory");
    }
}

}  // namespace carbonsnap::cli
