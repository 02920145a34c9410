#include <doctest.h>

#include "charweb/scalar.hpp"
#include "charweb/errors.hpp"

using charweb::GQ;

TEST_SUITE("scalar") {

TEST_CASE("field arithmetic is exact") {
    GQ a = GQ::ratio(1, 3);
    GQ b = GQ::ratio(1, 6);
    CHECK(a + b == GQ::ratio(1, 2));
    CHECK(a - b == b);
    CHECK(a * GQ(3) == GQ(1));
    CHECK(a / b == GQ(2));

    GQ i(mpq_class(0), mpq_class(1));
    CHECK(i * i == GQ(-1));
    CHECK((GQ(1) + i) * (GQ(1) - i) == GQ(2));
    CHECK(i.inverse() == -i);
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(GQ(1) / GQ(0), charweb::SemanticError);
    CHECK_THROWS_AS(GQ(0).inverse(), charweb::SemanticError);
}

TEST_CASE("canonical text form") {
    CHECK(GQ(0).str() == "0/1");
    CHECK(GQ::ratio(-4, 6).str() == "-2/3");
    CHECK(GQ(mpq_class(1, 2), mpq_class(-3)).str() == "1/2-3/1 i");
    CHECK(GQ(mpq_class(0), mpq_class(1, 4)).str() == "0/1+1/4 i");
}

TEST_CASE("parse round-trips and accepts loose forms") {
    for (const char* text : {"0/1", "-2/3", "1/2-3/1 i", "0/1+1/4 i", "7/1"}) {
        GQ v = GQ::parse(text);
        CHECK(v.str() == text);
    }
    CHECK(GQ::parse("5") == GQ(5));
    CHECK(GQ::parse(" -5 ") == GQ(-5));
    CHECK(GQ::parse("2/4") == GQ::ratio(1, 2));
    CHECK(GQ::parse("1/2+1/3i") == GQ(mpq_class(1, 2), mpq_class(1, 3)));
    CHECK(GQ::parse("3/4 i") == GQ(mpq_class(0), mpq_class(3, 4)));

    CHECK_THROWS_AS(GQ::parse(""), charweb::ParseError);
    CHECK_THROWS_AS(GQ::parse("1/0"), charweb::ParseError);
    CHECK_THROWS_AS(GQ::parse("1+2"), charweb::ParseError);
    CHECK_THROWS_AS(GQ::parse("x"), charweb::ParseError);
}

}  // TEST_SUITE
