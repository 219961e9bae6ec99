#include "carbonsnap/decimal.hpp"

#include <cctype>
#include <ostream>

#include "carbonsnap/error.hpp"

namespace carbonsnap {

namespace mp = boost::multiprecision;
using integer = mp::cpp_int;

namespace {

std::string format_parse_error(const std::string& origin, std::size_t line, std::size_t column,
                               const std::string& message) {
    std::string out = origin;
    if (line > 0) {
        out += ":" + std::to_string(line);
        if (column > 0) out += ":" + std::to_string(column);
    }
    out += ": " + message;
    return out;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// cpp_int reads a leading 0 as an octal prefix, so strip it first.
integer from_digits(std::string_view digits) {
    const auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return 0;
    return integer{std::string(digits.substr(first))};
}

integer pow10_int(unsigned n) {
    integer r = 1;
    for (unsigned i = 0; i < n; ++i) r *= 10;
    return r;
}

// floor(n / d) for d > 0.
integer floor_div(const integer& n, const integer& d) {
    integer q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

[[noreturn]] void bad_number(std::string_view text) {
    throw ParseError("<number>", 0, 0, "not a decimal number: '" + std::string(text) + "'");
}

}  // namespace

ParseError::ParseError(std::string origin, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(format_parse_error(origin, line, column, message)),
      origin_(std::move(origin)),
      line_(line),
      column_(column) {}

Decimal Decimal::parse(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad_number(text);
        const integer n = from_digits(num);
        const integer d = from_digits(den);
        if (d == 0) bad_number(text);
        rational r(n, d);
        return Decimal(negative ? rational(-r) : r);
    }

    std::string_view mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = s.substr(0, e);
        auto exp_text = s.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6) bad_number(text);
        exponent = std::stol(std::string(exp_text));
        if (exp_negative) exponent = -exponent;
    }

    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        int_part = mantissa.substr(0, dot);
        frac_part = mantissa.substr(dot + 1);
    }
    if (!all_digits(int_part)) bad_number(text);
    if (mantissa.find('.') != std::string_view::npos && !all_digits(frac_part)) bad_number(text);

    std::string digits = std::string(int_part) + std::string(frac_part);
    const integer n = from_digits(digits);
    long scale = static_cast<long>(frac_part.size()) - exponent;
    rational r;
    if (scale >= 0) {
        r = rational(n, pow10_int(static_cast<unsigned>(scale)));
    } else {
        r = rational(n * pow10_int(static_cast<unsigned>(-scale)));
    }
    return Decimal(negative ? rational(-r) : r);
}

Decimal Decimal::ratio(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw ValidationError("division by zero");
    return Decimal(rational(integer(numerator), integer(denominator)));
}

bool Decimal::is_zero() const { return value_ == 0; }
bool Decimal::is_negative() const { return value_ < 0; }
bool Decimal::is_integer() const { return mp::denominator(value_) == 1; }
int Decimal::sign() const { return value_ < 0 ? -1 : (value_ > 0 ? 1 : 0); }

Decimal Decimal::abs() const { return is_negative() ? -*this : *this; }

Decimal Decimal::floor() const {
    return Decimal(rational(floor_div(mp::numerator(value_), mp::denominator(value_))));
}

Decimal Decimal::ceil() const { return -((-*this).floor()); }

Decimal Decimal::round_half_up(int places) const {
    const Decimal scale = pow10(places);
    const Decimal half = Decimal::ratio(1, 2);
    Decimal scaled = abs() * scale;
    Decimal rounded = (scaled + half).floor() / scale;
    return is_negative() ? -rounded : rounded;
}

Decimal Decimal::truncate(int places) const {
    const Decimal scale = pow10(places);
    Decimal truncated = (abs() * scale).floor() / scale;
    return is_negative() ? -truncated : truncated;
}

double Decimal::to_double() const { return value_.convert_to<double>(); }

std::string Decimal::to_string() const {
    integer n = mp::numerator(value_);
    integer d = mp::denominator(value_);
    integer rest = d;
    unsigned twos = 0;
    unsigned fives = 0;
    while (rest % 2 == 0) {
        rest /= 2;
        ++twos;
    }
    while (rest % 5 == 0) {
        rest /= 5;
        ++fives;
    }
    if (rest != 1) return n.str() + "/" + d.str();
    const unsigned places = std::max(twos, fives);
    return to_fixed(static_cast<int>(places));
}

std::string Decimal::to_fixed(int places) const {
    if (places < 0) places = 0;
    Decimal rounded = round_half_up(places);
    integer scaled = mp::numerator((rounded.abs() * pow10(places)).value_);
    std::string digits = scaled.str();
    if (places > 0) {
        if (digits.size() <= static_cast<std::size_t>(places))
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    }
    if (rounded.is_negative()) digits.insert(0, "-");
    return digits;
}

Decimal& Decimal::operator+=(const Decimal& rhs) {
    value_ += rhs.value_;
    return *this;
}

Decimal& Decimal::operator-=(const Decimal& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Decimal& Decimal::operator*=(const Decimal& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Decimal& Decimal::operator/=(const Decimal& rhs) {
    if (rhs.is_zero()) throw ValidationError("division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Decimal& value) { return os << value.to_string(); }

Decimal pow10(int places) {
    if (places >= 0) return Decimal(Decimal::rational(pow10_int(static_cast<unsigned>(places))));
    return Decimal(Decimal::rational(integer(1), pow10_int(static_cast<unsigned>(-places))));
}

}  // namespace carbonsnap
