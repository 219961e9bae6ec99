#include "oracles.hpp"

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace carbonsnap::testkit {

double riemann_kwh(const std::function<double(double)>& watts, double t0_s, double t1_s, double step_s) {
    double joules = 0.0;
    const auto steps = static_cast<std::int64_t>((t1_s - t0_s) / step_s);
    for (std::int64_t k = 0; k < steps; ++k) joules += watts(t0_s + static_cast<double>(k) * step_s) * step_s;
    // a final partial step, if the span is not a multiple of step_s
    const double covered = static_cast<double>(steps) * step_s;
    if (t0_s + covered < t1_s) joules += watts(t0_s + covered) * (t1_s - t0_s - covered);
    return joules / 3.6e6;
}

ExactFraction simpson_kwh_exact(const std::vector<std::int64_t>& seconds, const std::vector<std::int64_t>& milliwatts) {
    using boost::multiprecision::cpp_rational;
    if (seconds.size() != milliwatts.size() || seconds.size() < 2) throw std::invalid_argument("bad profile");
    cpp_rational mws = 0;  // milliwatt-seconds
    for (std::size_t i = 1; i < seconds.size(); ++i) {
        const cpp_rational a = milliwatts[i - 1];
        const cpp_rational b = milliwatts[i];
        const cpp_rational mid = (a + b) / 2;  // value of the linear segment at its midpoint
        const cpp_rational dt = seconds[i] - seconds[i - 1];
        mws += dt / 6 * (a + 4 * mid + b);
    }
    const cpp_rational kwh = mws / cpp_rational(1000) / cpp_rational(3600000);
    return ExactFraction{boost::multiprecision::numerator(kwh).str(), boost::multiprecision::denominator(kwh).str()};
}

double minute_discretized_carbon(double kwh, std::int64_t from_min, std::int64_t to_min,
                                 const std::vector<SeriesStep>& steps) {
    const double per_minute = kwh / static_cast<double>(to_min - from_min);
    double grams = 0.0;
    for (std::int64_t m = from_min; m < to_min; ++m) {
        bool found = false;
        for (const auto& s : steps) {
            if (s.from_min <= m && m < s.to_min) {
                grams += per_minute * s.intensity;
                found = true;
                break;
            }
        }
        if (!found) throw std::runtime_error("oracle: minute " + std::to_string(m) + " not covered");
    }
    return grams;
}

double implied_node_count(double cell_kg, double estimate_kg, double lifespan_years, double days_per_year,
                          double period_days) {
    return cell_kg * lifespan_years * days_per_year / (estimate_kg * period_days);
}

}  // namespace carbonsnap::testkit
