#include <gtest/gtest.h>

#include "carbonsnap/decimal.hpp"
#include "carbonsnap/error.hpp"

using carbonsnap::Decimal;

TEST(Decimal, ParsesPlainAndExponentForms) {
    EXPECT_EQ(Decimal::parse("19380"), Decimal(19380));
    EXPECT_EQ(Decimal::parse("0.1") + Decimal::parse("0.2"), Decimal::parse("0.3"));
    EXPECT_EQ(Decimal::parse("-1.5e2"), Decimal(-150));
    EXPECT_EQ(Decimal::parse("25e-3"), Decimal::ratio(1, 40));
    EXPECT_EQ(Decimal::parse("1461/4"), Decimal::parse("365.25"));
}

TEST(Decimal, RejectsGarbage) {
    for (const char* bad : {"", "-", "1.", ".5", "1e", "abc", "1/0", "1,5", "1 2", "0x10", "1/-2"})
        EXPECT_THROW(Decimal::parse(bad), carbonsnap::ParseError) << bad;
}

TEST(Decimal, ToStringRoundTrips) {
    for (const char* text : {"0", "1", "-3", "0.125", "2208", "1/3", "-22/7", "0.0001"}) {
        const Decimal v = Decimal::parse(text);
        EXPECT_EQ(Decimal::parse(v.to_string()), v) << text;
    }
    EXPECT_EQ(Decimal::ratio(1, 3).to_string(), "1/3");
    EXPECT_EQ(Decimal::ratio(3, 8).to_string(), "0.375");
}

TEST(Decimal, Rounding) {
    EXPECT_EQ(Decimal::parse("2.5").round_half_up(), Decimal(3));
    EXPECT_EQ(Decimal::parse("-2.5").round_half_up(), Decimal(-3));
    EXPECT_EQ(Decimal::parse("0.605").round_half_up(2), Decimal::parse("0.61"));
    EXPECT_EQ(Decimal::parse("525.9").truncate(), Decimal(525));
    EXPECT_EQ(Decimal::parse("-525.9").truncate(), Decimal(-525));
    EXPECT_EQ(Decimal::parse("-1.2").floor(), Decimal(-2));
    EXPECT_EQ(Decimal::parse("1.2").ceil(), Decimal(2));
    EXPECT_EQ(Decimal::parse("3391.5").to_fixed(0), "3392");
    EXPECT_EQ(Decimal::parse("0.6").to_fixed(2), "0.60");
}

TEST(Decimal, DivisionByZeroIsValidationError) {
    EXPECT_THROW(Decimal(1) / Decimal(0), carbonsnap::ValidationError);
}

TEST(Decimal, Ordering) {
    EXPECT_LT(Decimal::ratio(1, 3), Decimal::parse("0.34"));
    EXPECT_GT(Decimal(0), Decimal(-1));
    EXPECT_EQ(Decimal(-4).abs(), Decimal(4));
    EXPECT_EQ(Decimal(-4).sign(), -1);
}
