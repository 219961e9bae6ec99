#include "carbonsnap/intensity.hpp"

#include <algorithm>
#include <sstream>

#include "carbonsnap/error.hpp"
#include "json_util.hpp"

namespace carbonsnap {

using jsonutil::json;

namespace {

const std::vector<IntensityScenario>& builtin_scenarios() {
    static const std::vector<IntensityScenario> builtins{
        {"Low", CarbonIntensity(Decimal(50))},
        {"Medium", CarbonIntensity(Decimal(175))},
        {"High", CarbonIntensity(Decimal(300))},
    };
    return builtins;
}

// Minute precision like the API, unless that would lose information.
std::string api_timestamp(Timestamp t) {
    if (t.time_since_epoch() % std::chrono::minutes(1) == std::chrono::milliseconds(0))
        return format_timestamp_minutes(t);
    return format_timestamp(t);
}

}  // namespace

ScenarioRegistry::ScenarioRegistry() : scenarios_(builtin_scenarios()) {}

bool ScenarioRegistry::is_builtin(std::string_view name) {
    const auto& b = builtin_scenarios();
    return std::any_of(b.begin(), b.end(), [&](const IntensityScenario& s) { return s.name == name; });
}

bool ScenarioRegistry::contains(std::string_view name) const {
    return std::any_of(scenarios_.begin(), scenarios_.end(), [&](const IntensityScenario& s) { return s.name == name; });
}

void ScenarioRegistry::add(std::string name, CarbonIntensity intensity) {
    if (name.empty()) throw ValidationError("scenario name must not be empty");
    if (is_builtin(name)) throw ValidationError("scenario '" + name + "' is built in and cannot be redefined");
    if (contains(name)) throw ValidationError("scenario '" + name + "' is already registered");
    scenarios_.push_back(IntensityScenario{std::move(name), std::move(intensity)});
}

const CarbonIntensity& ScenarioRegistry::lookup(std::string_view name) const {
    for (const auto& s : scenarios_)
        if (s.name == name) return s.intensity;
    std::string known;
    for (const auto& s : scenarios_) known += (known.empty() ? "" : ", ") + s.name;
    throw ValidationError("unknown intensity scenario '" + std::string(name) + "' (registered: " + known + ")");
}

CarbonIntensity scenario(std::string_view name) {
    static const ScenarioRegistry registry;
    return registry.lookup(name);
}

std::string_view to_string(IntensityField field) { return field == IntensityField::actual ? "actual" : "forecast"; }

IntensitySeries::IntensitySeries(std::vector<IntensityPeriod> periods) : periods_(std::move(periods)) {
    std::stable_sort(periods_.begin(), periods_.end(),
                     [](const IntensityPeriod& a, const IntensityPeriod& b) { return a.from < b.from; });
    for (std::size_t i = 0; i < periods_.size(); ++i) {
        const auto& p = periods_[i];
        if (!(p.from < p.to))
            throw ValidationError("intensity period " + format_timestamp(p.from) + " .. " + format_timestamp(p.to) +
                                  " is empty or inverted");
        if (i > 0 && periods_[i - 1].to > p.from)
            throw ValidationError("intensity periods overlap at " + format_timestamp(p.from));
    }
}

IntensitySeries IntensitySeries::constant(const SnapshotPeriod& span, const CarbonIntensity& value) {
    return IntensitySeries({IntensityPeriod{span.start(), span.end(), value, IntensityField::actual, std::nullopt}});
}

IntensityStats summarize(const IntensitySeries& series) {
    if (series.empty()) throw ValidationError("cannot summarize an empty intensity series");
    const auto& p = series.periods();
    IntensityStats stats{p.front().intensity, p.front().intensity, Decimal(0), p.size()};
    Decimal weighted;
    Decimal total_ms;
    for (const auto& period : p) {
        stats.min = std::min(stats.min, period.intensity);
        stats.max = std::max(stats.max, period.intensity);
        const Decimal ms((period.to - period.from).count());
        weighted += period.intensity.grams_per_kwh() * ms;
        total_ms += ms;
    }
    stats.mean = weighted / total_ms;
    return stats;
}

CarbonQuantity time_weighted_carbon(const EnergyProfile& profile, const IntensitySeries& series) {
    const auto& periods = series.periods();
    CarbonQuantity total;
    for (const auto& [span, energy] : profile) {
        // first series period that ends after the entry starts
        auto it = std::upper_bound(periods.begin(), periods.end(), span.start(),
                                   [](Timestamp t, const IntensityPeriod& p) { return t < p.to; });
        Timestamp cursor = span.start();
        Decimal weighted;  // sum of overlap_ms x intensity
        while (cursor < span.end()) {
            if (it == periods.end() || it->from > cursor) {
                const Timestamp gap_end = it == periods.end() ? span.end() : std::min(it->from, span.end());
                throw ValidationError("intensity series does not cover " + format_timestamp(cursor) + " .. " +
                                      format_timestamp(gap_end));
            }
            const Timestamp stop = std::min(it->to, span.end());
            weighted += Decimal((stop - cursor).count()) * it->intensity.grams_per_kwh();
            cursor = stop;
            ++it;
        }
        const Decimal duration_ms(span.duration().count());
        total += CarbonQuantity(energy.kwh() * weighted / duration_ms);
    }
    return total;
}

IntensitySeries parse_intensity_json(std::string_view body, const std::string& origin) {
    auto fail = [&](const std::string& why) -> ParseError {
        return ParseError(origin, 0, 0, why + " (payload: " + jsonutil::excerpt(body) + ")");
    };
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw fail(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("data")) throw fail("expected an object with a 'data' array");
    const json& data = doc.at("data");
    if (!data.is_array()) throw fail("'data' must be an array");

    std::vector<IntensityPeriod> periods;
    periods.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const json& entry = data[i];
        const std::string where = "data[" + std::to_string(i) + "]";
        try {
            const Timestamp from = parse_timestamp(jsonutil::require_string(entry, "from", where));
            const Timestamp to = parse_timestamp(jsonutil::require_string(entry, "to", where));
            const json& intensity = jsonutil::require(entry, "intensity", where);
            if (!intensity.is_object()) throw fail(where + ".intensity must be an object");
            const json* chosen = nullptr;
            IntensityField field = IntensityField::actual;
            if (intensity.contains("actual") && !intensity.at("actual").is_null()) {
                chosen = &intensity.at("actual");
            } else if (intensity.contains("forecast") && !intensity.at("forecast").is_null()) {
                chosen = &intensity.at("forecast");
                field = IntensityField::forecast;
            } else {
                throw fail(where + " has neither an actual nor a forecast intensity");
            }
            Decimal value = jsonutil::to_decimal(*chosen, where + ".intensity." + std::string(to_string(field)));
            std::optional<std::string> index;
            if (intensity.contains("index") && intensity.at("index").is_string())
                index = intensity.at("index").get<std::string>();
            periods.push_back(IntensityPeriod{from, to, CarbonIntensity(value), field, index});
        } catch (const ParseError& e) {
            if (e.origin() == origin) throw;
            throw fail(where + ": " + e.what());
        } catch (const Error& e) {
            throw fail(where + ": " + e.what());
        }
    }
    try {
        return IntensitySeries(std::move(periods));
    } catch (const ValidationError& e) {
        throw fail(e.what());
    }
}

std::string intensity_to_json(const IntensitySeries& series) {
    json data = json::array();
    for (const auto& p : series.periods()) {
        json intensity = json::object();
        const json value = jsonutil::number(p.intensity.grams_per_kwh());
        if (p.field == IntensityField::actual) {
            intensity["actual"] = value;
            intensity["forecast"] = nullptr;
        } else {
            intensity["actual"] = nullptr;
            intensity["forecast"] = value;
        }
        intensity["index"] = p.index ? json(*p.index) : json(nullptr);
        data.push_back(json{{"from", api_timestamp(p.from)},
                            {"to", api_timestamp(p.to)},
                            {"intensity", std::move(intensity)}});
    }
    return json{{"data", std::move(data)}}.dump(2) + "\n";
}

std::string intensity_to_csv(const IntensitySeries& series) {
    std::ostringstream out;
    out << "from,to,intensity_g_per_kwh,field\n";
    for (const auto& p : series.periods())
        out << format_timestamp(p.from) << ',' << format_timestamp(p.to) << ','
            << p.intensity.grams_per_kwh().to_string() << ',' << to_string(p.field) << '\n';
    return out.str();
}

}  // namespace carbonsnap
