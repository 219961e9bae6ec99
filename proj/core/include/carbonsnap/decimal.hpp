#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace carbonsnap {

/// Exact rational number used for every physical quantity in the library.
///
/// Values parsed from decimal text are represented exactly, and sums,
/// products and quotients never round. Division by lifespans or day counts
/// produces non-terminating values (400 / 1095.75, say); those stay exact
/// until presentation, where `round_half_up` or `truncate` picks the
/// displayed digits.
///
/// Text form: `to_string` prints a plain decimal when the value terminates
/// in base ten and `numerator/denominator` otherwise. `parse` accepts both,
/// so `parse(x.to_string()) == x` for every value.
class Decimal {
public:
    using rational = boost::multiprecision::cpp_rational;

    Decimal() = default;
    Decimal(std::int64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    explicit Decimal(rational value) : value_(std::move(value)) {}

    /// Parses `[-]digits[.digits][e[+-]digits]` or `[-]p/q`.
    /// Throws ParseError on anything else.
    static Decimal parse(std::string_view text);

    static Decimal ratio(std::int64_t numerator, std::int64_t denominator);

    const rational& raw() const noexcept { return value_; }

    bool is_zero() const;
    bool is_negative() const;
    bool is_integer() const;
    int sign() const;

    Decimal abs() const;

    // Rounds to `places` fractional digits, half away from zero.
    Decimal round_half_up(int places = 0) const;
    // Drops digits beyond `places`, toward zero.
    Decimal truncate(int places = 0) const;

    // Largest integer <= value / smallest integer >= value.
    Decimal floor() const;
    Decimal ceil() const;

    double to_double() const;

    // Exact text, see class comment.
    std::string to_string() const;
    // Fixed-point text with exactly `places` fractional digits. The value
    // must already be representable at that precision (round it first);
    // otherwise the result is rounded half-up.
    std::string to_fixed(int places) const;

    Decimal& operator+=(const Decimal& rhs);
    Decimal& operator-=(const Decimal& rhs);
    Decimal& operator*=(const Decimal& rhs);
    // Throws ValidationError on division by zero.
    Decimal& operator/=(const Decimal& rhs);

    friend Decimal operator+(Decimal lhs, const Decimal& rhs) { return lhs += rhs; }
    friend Decimal operator-(Decimal lhs, const Decimal& rhs) { return lhs -= rhs; }
    friend Decimal operator*(Decimal lhs, const Decimal& rhs) { return lhs *= rhs; }
    friend Decimal operator/(Decimal lhs, const Decimal& rhs) { return lhs /= rhs; }
    Decimal operator-() const { return Decimal(rational(-value_)); }

    friend bool operator==(const Decimal& a, const Decimal& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);

private:
    rational value_{0};
};

std::ostream& operator<<(std::ostream& os, const Decimal& value);

// 10^places as an exact value; places may be negative.
Decimal pow10(int places);

}  // namespace carbonsnap
